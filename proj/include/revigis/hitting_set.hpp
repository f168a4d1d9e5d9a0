#pragma once

#include <cstddef>
#include <vector>

namespace revigis {

/// Sets over the universe {0, ..., universe - 1}.
struct HittingSetProblem {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;
};

/// Branch-and-bound minimum hitting set. Among all minimum-cardinality
/// solutions the lexicographically smallest sorted index list is returned.
/// Throws DomainError if some set is empty.
std::vector<std::size_t> minimum_hitting_set(const HittingSetProblem& problem);

/// Repeatedly picks the element contained in the most unhit sets (smallest
/// index on ties). Not minimal in general.
std::vector<std::size_t> greedy_hitting_set(const HittingSetProblem& problem);

}  // namespace revigis
