#include <algorithm>
#include <map>
#include <set>

#include "revigis/errors.hpp"
#include "revigis/flood.hpp"
#include "revigis/hitting_set.hpp"

namespace revigis {

namespace {

class BranchAndBound {
 public:
  explicit BranchAndBound(const HittingSetProblem& p) : problem_(p), hits_(p.sets.size(), 0) {
    containing_.resize(p.universe);
    for (std::size_t s = 0; s < p.sets.size(); ++s)
      for (std::size_t e : p.sets[s]) containing_[e].push_back(s);
    max_element_.resize(p.sets.size());
    for (std::size_t s = 0; s < p.sets.size(); ++s)
      max_element_[s] = *std::max_element(p.sets[s].begin(), p.sets[s].end());
  }

  // Size of a greedy packing of pairwise disjoint unhit sets, restricted to
  // elements >= from. Any hitting set needs at least that many elements.
  std::size_t packing_bound(std::size_t from) const {
    std::vector<bool> used(problem_.universe, false);
    std::size_t bound = 0;
    for (std::size_t s = 0; s < problem_.sets.size(); ++s) {
      if (hits_[s] > 0) continue;
      bool disjoint = true;
      for (std::size_t e : problem_.sets[s])
        if (e >= from && used[e]) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      for (std::size_t e : problem_.sets[s])
        if (e >= from) used[e] = true;
      ++bound;
    }
    return bound;
  }

  // Lexicographically first solution of size <= budget, exploring elements in
  // increasing order with "include" before "exclude".
  bool search(std::size_t next, std::size_t budget) {
    if (unhit_ == 0) return true;
    if (next >= problem_.universe) return false;
    for (std::size_t s = 0; s < problem_.sets.size(); ++s)
      if (hits_[s] == 0 && max_element_[s] < next) return false;
    if (packing_bound(next) > budget) return false;

    bool useful = std::any_of(containing_[next].begin(), containing_[next].end(),
                              [&](std::size_t s) { return hits_[s] == 0; });
    if (useful && budget > 0) {
      add(next);
      chosen_.push_back(next);
      if (search(next + 1, budget - 1)) return true;
      chosen_.pop_back();
      remove(next);
    }
    return search(next + 1, budget);
  }

  void reset() {
    std::fill(hits_.begin(), hits_.end(), 0);
    unhit_ = problem_.sets.size();
    chosen_.clear();
  }

  std::size_t initial_bound() {
    reset();
    return packing_bound(0);
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }

 private:
  void add(std::size_t e) {
    for (std::size_t s : containing_[e])
      if (hits_[s]++ == 0) --unhit_;
  }
  void remove(std::size_t e) {
    for (std::size_t s : containing_[e])
      if (--hits_[s] == 0) ++unhit_;
  }

  const HittingSetProblem& problem_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::size_t> max_element_;
  std::vector<std::size_t> hits_;
  std::size_t unhit_ = 0;
  std::vector<std::size_t> chosen_;
};

HittingSetProblem normalized(const HittingSetProblem& problem) {
  HittingSetProblem p{problem.universe, {}};
  for (auto set : problem.sets) {
    if (set.empty()) throw DomainError("hitting set instance contains an empty set");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.back() >= p.universe) throw DomainError("hitting set element outside the universe");
    p.sets.push_back(std::move(set));
  }
  return p;
}

}  // namespace

std::vector<std::size_t> minimum_hitting_set(const HittingSetProblem& problem) {
  const HittingSetProblem p = normalized(problem);
  if (p.sets.empty()) return {};
  const std::size_t upper = greedy_hitting_set(p).size();
  BranchAndBound bb(p);
  for (std::size_t k = bb.initial_bound(); k <= upper; ++k) {
    bb.reset();
    if (bb.search(0, k)) return bb.chosen();
  }
  // Unreachable: the greedy solution has size `upper`.
  return greedy_hitting_set(p);
}

std::vector<std::size_t> greedy_hitting_set(const HittingSetProblem& problem) {
  const HittingSetProblem p = normalized(problem);
  std::vector<bool> hit(p.sets.size(), false);
  std::vector<std::size_t> chosen;
  for (;;) {
    std::vector<std::size_t> count(p.universe, 0);
    bool any = false;
    for (std::size_t s = 0; s < p.sets.size(); ++s) {
      if (hit[s]) continue;
      any = true;
      for (std::size_t e : p.sets[s]) ++count[e];
    }
    if (!any) break;
    std::size_t best = static_cast<std::size_t>(
        std::max_element(count.begin(), count.end()) - count.begin());
    chosen.push_back(best);
    for (std::size_t s = 0; s < p.sets.size(); ++s)
      if (std::binary_search(p.sets[s].begin(), p.sets[s].end(), best)) hit[s] = true;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace flood {

RevisionResult revise(const FloodScene& scene, RevisionStrategy strategy) {
  const ConsistencyReport report = check_consistency(scene);

  std::set<std::string> involved;
  for (const auto& c : report.conflicts) involved.insert(c.observations.begin(), c.observations.end());
  const std::vector<std::string> ids(involved.begin(), involved.end());
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

  HittingSetProblem problem{ids.size(), {}};
  for (const auto& c : report.conflicts) {
    std::vector<std::size_t> set;
    for (const auto& id : c.observations) set.push_back(index.at(id));
    problem.sets.push_back(std::move(set));
  }

  const auto picked = strategy == RevisionStrategy::exact ? minimum_hitting_set(problem)
                                                          : greedy_hitting_set(problem);

  RevisionResult result;
  result.minimal = strategy == RevisionStrategy::exact;
  FloodScene revised = scene;
  for (std::size_t e : picked) {
    result.retracted.push_back(ids[e]);
    revised.find(ids[e])->retracted = true;
  }
  auto propagated = propagate(reset_working_intervals(std::move(revised)));
  if (auto* bad = std::get_if<Inconsistency>(&propagated))
    throw std::logic_error("revision left parcel '" + bad->parcel + "' inconsistent");
  result.revised_scene = std::get<FloodScene>(std::move(propagated));
  return result;
}

}  // namespace flood

}  // namespace revigis
