#pragma once

#include <string>

#include "revigis/flood.hpp"
#include "revigis/fusion.hpp"
#include "revigis/translation.hpp"

// Static SVG figures for the analysis pipelines.
namespace revigis::svg {

/// Parcels on a grid, shaded by interval width (darker = tighter), with flow
/// arrows. Retracted observations get a dashed outline.
std::string render_flood(const flood::FloodScene& scene);

/// Roads solid, streams dash-dotted, bridges as dots (inferred ones hollow),
/// dropped bridges crossed out and unresolved violations ringed in red.
std::string render_fusion(const fusion::FusionResult& result);

/// Changed cells filled, conflict cells hatched.
std::string render_change(const translation::ChangeMap& map);

/// Grayscale rendering of a numeric difference grid.
std::string render_numeric(const translation::NumericGrid& grid);

}  // namespace revigis::svg
