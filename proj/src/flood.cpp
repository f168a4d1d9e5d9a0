#include "revigis/flood.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "revigis/errors.hpp"

namespace revigis::flood {

HeightInterval::HeightInterval(std::optional<Height> lo_, std::optional<Height> hi_)
    : lo(lo_), hi(hi_) {
  if (lo && hi && *lo > *hi)
    throw ValidationError("height interval [" + std::to_string(*lo) + ", " + std::to_string(*hi) +
                          "] is empty");
}

bool HeightInterval::contains(Height h) const {
  return (!lo || *lo <= h) && (!hi || h <= *hi);
}

bool HeightInterval::subset_of(const HeightInterval& other) const {
  bool lo_ok = !other.lo || (lo && *lo >= *other.lo);
  bool hi_ok = !other.hi || (hi && *hi <= *other.hi);
  return lo_ok && hi_ok;
}

std::optional<Height> HeightInterval::width() const {
  if (!bounded()) return std::nullopt;
  return *hi - *lo;
}

std::optional<HeightInterval> intersect(const HeightInterval& a, const HeightInterval& b) {
  std::optional<Height> lo = a.lo;
  if (b.lo) lo = lo ? std::max(*lo, *b.lo) : *b.lo;
  std::optional<Height> hi = a.hi;
  if (b.hi) hi = hi ? std::min(*hi, *b.hi) : *b.hi;
  if (lo && hi && *lo > *hi) return std::nullopt;
  return HeightInterval(lo, hi);
}

const Parcel* FloodScene::find(std::string_view id) const {
  auto it = std::find_if(parcels.begin(), parcels.end(), [&](const Parcel& p) { return p.id == id; });
  return it == parcels.end() ? nullptr : &*it;
}

Parcel* FloodScene::find(std::string_view id) {
  auto it = std::find_if(parcels.begin(), parcels.end(), [&](const Parcel& p) { return p.id == id; });
  return it == parcels.end() ? nullptr : &*it;
}

void validate(const FloodScene& scene) {
  if (!scene.global_bounds.bounded())
    throw ValidationError("global bounds must be bounded on both ends");
  std::set<std::string, std::less<>> ids;
  for (const auto& p : scene.parcels) {
    if (p.id.empty()) throw ValidationError("parcel with empty id");
    if (!ids.insert(p.id).second) throw ValidationError("duplicate parcel id '" + p.id + "'");
  }
  auto known = [&](const std::string& id, const char* what) {
    if (!ids.contains(id)) throw ValidationError(std::string(what) + " references unknown parcel '" + id + "'");
  };
  for (const auto& f : scene.flows) {
    known(f.from, "flow");
    known(f.to, "flow");
    if (f.from == f.to) throw ValidationError("flow on parcel '" + f.from + "' is a self-loop");
  }
  for (const auto& [a, b] : scene.neighbors) {
    known(a, "neighbor pair");
    known(b, "neighbor pair");
    if (a == b) throw ValidationError("parcel '" + a + "' listed as its own neighbor");
  }
}

HeightInterval clamp_open_ends(const HeightInterval& observed, const HeightInterval& global_bounds) {
  // An open end never makes the interval empty: the observation keeps its
  // closed end even if that lies outside the global bounds.
  std::optional<Height> lo = observed.lo;
  std::optional<Height> hi = observed.hi;
  if (!lo) lo = hi && global_bounds.lo ? std::min(*global_bounds.lo, *hi) : global_bounds.lo;
  if (!hi) hi = lo && global_bounds.hi ? std::max(*global_bounds.hi, *lo) : global_bounds.hi;
  return HeightInterval(lo, hi);
}

FloodScene reset_working_intervals(FloodScene scene) {
  for (auto& p : scene.parcels) {
    p.current = scene.global_bounds;
    if (auto obs = p.active_observation())
      if (auto both = intersect(*obs, scene.global_bounds)) p.current = *both;
  }
  return scene;
}

InconsistencyError::InconsistencyError(Inconsistency what)
    : std::runtime_error("scene is inconsistent at parcel '" + what.parcel + "'"), what_(std::move(what)) {}

namespace {

struct Bounds {
  Height lo;
  Height hi;
};

class Propagator {
 public:
  Propagator(const FloodScene& scene, std::span<const std::size_t> edge_order)
      : scene_(scene), order_(edge_order.begin(), edge_order.end()) {
    validate(scene);
    if (order_.size() != scene.flows.size())
      throw ValidationError("edge order must be a permutation of the flow indices");
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t e : order_) {
      if (e >= seen.size() || seen[e])
        throw ValidationError("edge order must be a permutation of the flow indices");
      seen[e] = true;
    }

    std::map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < scene.parcels.size(); ++i) index[scene.parcels[i].id] = i;
    endpoints_.reserve(scene.flows.size());
    for (const auto& f : scene.flows) endpoints_.emplace_back(index.at(f.from), index.at(f.to));
    incident_.resize(scene.parcels.size());
    for (std::size_t e : order_) {
      incident_[endpoints_[e].first].push_back(e);
      incident_[endpoints_[e].second].push_back(e);
    }
  }

  PropagationResult run() {
    const auto& g = scene_.global_bounds;
    bounds_.clear();
    // Bounds may cross (lo > hi). The lo and hi rules never read each other, so
    // the fixpoint of each is order independent even on inconsistent scenes.
    for (const auto& p : scene_.parcels) {
      Bounds b{*g.lo, *g.hi};
      auto narrow = [&b](const HeightInterval& iv) {
        if (iv.lo) b.lo = std::max(b.lo, *iv.lo);
        if (iv.hi) b.hi = std::min(b.hi, *iv.hi);
      };
      narrow(p.current);
      if (auto obs = p.active_observation()) narrow(*obs);
      bounds_.push_back(b);
    }

    std::deque<std::size_t> work(order_.begin(), order_.end());
    std::vector<bool> queued(scene_.flows.size(), true);
    while (!work.empty()) {
      const std::size_t e = work.front();
      work.pop_front();
      queued[e] = false;
      const auto [u, v] = endpoints_[e];
      std::vector<std::size_t> changed;
      if (bounds_[u].hi < bounds_[v].hi) {
        bounds_[v].hi = bounds_[u].hi;
        changed.push_back(v);
      }
      if (bounds_[v].lo > bounds_[u].lo) {
        bounds_[u].lo = bounds_[v].lo;
        changed.push_back(u);
      }
      for (std::size_t c : changed)
        for (std::size_t next : incident_[c])
          if (!queued[next]) {
            queued[next] = true;
            work.push_back(next);
          }
    }

    for (std::size_t i = 0; i < bounds_.size(); ++i)
      if (bounds_[i].lo > bounds_[i].hi) return Inconsistency{scene_.parcels[i].id};

    FloodScene out = scene_;
    for (std::size_t i = 0; i < out.parcels.size(); ++i)
      out.parcels[i].current = HeightInterval(bounds_[i].lo, bounds_[i].hi);
    return out;
  }

 private:
  const FloodScene& scene_;
  std::vector<std::size_t> order_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<Bounds> bounds_;
};

}  // namespace

PropagationResult propagate(const FloodScene& scene) {
  std::vector<std::size_t> order(scene.flows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return propagate(scene, order);
}

PropagationResult propagate(const FloodScene& scene, std::span<const std::size_t> edge_order) {
  return Propagator(scene, edge_order).run();
}

ConsistencyReport check_consistency(const FloodScene& scene) {
  validate(scene);
  const auto& g = scene.global_bounds;

  std::vector<std::string> ids;
  for (const auto& p : scene.parcels) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  std::map<std::string, std::vector<std::string>> downstream;
  for (const auto& f : scene.flows) downstream[f.from].push_back(f.to);
  for (auto& [_, next] : downstream) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }

  // Active observations clamped to the global bounds, as (lo, hi) possibly empty.
  std::map<std::string, Bounds> clamped;
  for (const auto& p : scene.parcels)
    if (auto obs = p.active_observation()) {
      HeightInterval c = clamp_open_ends(*obs, g);
      clamped[p.id] = {std::max(*c.lo, *g.lo), std::min(*c.hi, *g.hi)};
    }

  ConsistencyReport report;
  std::set<std::string> unary;
  for (const auto& [id, b] : clamped)
    if (b.lo > b.hi) {
      unary.insert(id);
      report.conflicts.push_back({{id}, {id}});
    }

  for (const auto& from : ids) {
    auto up = clamped.find(from);
    if (up == clamped.end() || unary.contains(from)) continue;
    // BFS over flows; ids visited in sorted order give deterministic paths.
    std::map<std::string, std::string> parent{{from, from}};
    std::queue<std::string> frontier;
    frontier.push(from);
    while (!frontier.empty()) {
      std::string at = frontier.front();
      frontier.pop();
      auto it = downstream.find(at);
      if (it == downstream.end()) continue;
      for (const auto& next : it->second)
        if (parent.emplace(next, at).second) frontier.push(next);
    }
    for (const auto& [to, _] : parent) {
      if (to == from || unary.contains(to)) continue;
      auto down = clamped.find(to);
      if (down == clamped.end() || !(up->second.hi < down->second.lo)) continue;
      std::vector<std::string> path{to};
      while (path.back() != from) path.push_back(parent.at(path.back()));
      std::reverse(path.begin(), path.end());
      report.conflicts.push_back({{from, to}, std::move(path)});
    }
  }
  std::sort(report.conflicts.begin(), report.conflicts.end(),
            [](const Conflict& a, const Conflict& b) { return a.observations < b.observations; });
  return report;
}

FloodScene extrapolate(const FloodScene& scene) {
  auto result = propagate(scene);
  if (auto* bad = std::get_if<Inconsistency>(&result)) throw InconsistencyError(*bad);
  return std::get<FloodScene>(std::move(result));
}

HeightInterval baseline_interpolate(const FloodScene& scene, std::string_view target) {
  validate(scene);
  if (!scene.find(target)) throw DomainError("unknown parcel '" + std::string(target) + "'");
  std::set<std::string, std::less<>> adjacent;
  auto link = [&](const std::string& a, const std::string& b) {
    if (a == target) adjacent.insert(b);
    if (b == target) adjacent.insert(a);
  };
  for (const auto& [a, b] : scene.neighbors) link(a, b);
  for (const auto& f : scene.flows) link(f.from, f.to);

  Height lo_sum = 0;
  Height hi_sum = 0;
  Height count = 0;
  for (const auto& id : adjacent) {
    auto obs = scene.find(id)->active_observation();
    if (!obs) continue;
    HeightInterval c = clamp_open_ends(*obs, scene.global_bounds);
    lo_sum += *c.lo;
    hi_sum += *c.hi;
    ++count;
  }
  if (count == 0)
    throw DomainError("parcel '" + std::string(target) + "' has no observed neighbor to interpolate from");
  auto mean = [&](Height sum) {
    return static_cast<Height>(std::llround(static_cast<double>(sum) / static_cast<double>(count)));
  };
  return HeightInterval(mean(lo_sum), mean(hi_sum));
}

}  // namespace revigis::flood
