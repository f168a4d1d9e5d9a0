#include "revigis/grades.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "revigis/errors.hpp"

namespace revigis {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Greatest element among `candidates` under `leq`, if it is unique and above all
// the others.
std::size_t greatest(const std::vector<std::size_t>& candidates,
                     const std::vector<std::vector<bool>>& leq) {
  for (std::size_t c : candidates) {
    bool above_all = std::all_of(candidates.begin(), candidates.end(),
                                 [&](std::size_t o) { return leq[o][c]; });
    if (above_all) return c;
  }
  return kNone;
}

std::size_t least(const std::vector<std::size_t>& candidates,
                  const std::vector<std::vector<bool>>& leq) {
  for (std::size_t c : candidates) {
    bool below_all = std::all_of(candidates.begin(), candidates.end(),
                                 [&](std::size_t o) { return leq[c][o]; });
    if (below_all) return c;
  }
  return kNone;
}

}  // namespace

GradeLattice GradeLattice::default_chain() {
  return chain({"none", "tentative", "reliable", "very_reliable"});
}

GradeLattice GradeLattice::chain(std::vector<std::string> names) {
  std::vector<OrderPair> order;
  for (std::size_t i = 1; i < names.size(); ++i) order.emplace_back(names[i - 1], names[i]);
  return from_order(std::move(names), order);
}

GradeLattice GradeLattice::from_order(std::vector<std::string> elements,
                                      const std::vector<OrderPair>& order) {
  const std::size_t n = elements.size();
  if (n == 0) throw ValidationError("grade lattice has no elements");

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (elements[i].empty()) throw ValidationError("grade lattice has an empty grade name");
    if (!index.emplace(elements[i], i).second)
      throw ValidationError("duplicate grade '" + elements[i] + "'");
  }

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [lo, hi] : order) {
    auto l = index.find(lo);
    auto h = index.find(hi);
    if (l == index.end()) throw ValidationError("order names unknown grade '" + lo + "'");
    if (h == index.end()) throw ValidationError("order names unknown grade '" + hi + "'");
    leq[l->second][h->second] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k][j]) leq[i][j] = true;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i])
        throw ValidationError("order is not antisymmetric: '" + elements[i] + "' and '" +
                              elements[j] + "' are mutually below each other");

  // Stable linear extension: repeatedly take the first element (in input order)
  // whose strict predecessors are all placed.
  std::vector<std::size_t> perm;
  std::vector<bool> placed(n, false);
  while (perm.size() < n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < n && ready; ++j)
        if (j != i && !placed[j] && leq[j][i]) ready = false;
      if (ready) {
        placed[i] = true;
        perm.push_back(i);
        break;
      }
    }
  }

  GradeLattice l;
  l.names_.resize(n);
  l.leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    l.names_[a] = elements[perm[a]];
    for (std::size_t b = 0; b < n; ++b) l.leq_[a][b] = leq[perm[a]][perm[b]];
  }

  l.meet_.assign(n, std::vector<std::size_t>(n, kNone));
  l.join_.assign(n, std::vector<std::size_t>(n, kNone));
  std::vector<std::size_t> bounds;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      bounds.clear();
      for (std::size_t c = 0; c < n; ++c)
        if (l.leq_[c][a] && l.leq_[c][b]) bounds.push_back(c);
      std::size_t m = greatest(bounds, l.leq_);
      if (m == kNone)
        throw ValidationError("grades '" + l.names_[a] + "' and '" + l.names_[b] +
                              "' have no unique meet; the order is not a lattice");
      bounds.clear();
      for (std::size_t c = 0; c < n; ++c)
        if (l.leq_[a][c] && l.leq_[b][c]) bounds.push_back(c);
      std::size_t j = least(bounds, l.leq_);
      if (j == kNone)
        throw ValidationError("grades '" + l.names_[a] + "' and '" + l.names_[b] +
                              "' have no unique join; the order is not a lattice");
      l.meet_[a][b] = l.meet_[b][a] = m;
      l.join_[a][b] = l.join_[b][a] = j;
    }
  }

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  l.bottom_ = least(all, l.leq_);
  l.top_ = greatest(all, l.leq_);
  l.chain_ = true;
  for (std::size_t a = 0; a < n && l.chain_; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!l.leq_[a][b] && !l.leq_[b][a]) {
        l.chain_ = false;
        break;
      }
  return l;
}

std::optional<Grade> GradeLattice::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return Grade(*it, static_cast<std::size_t>(it - names_.begin()));
}

Grade GradeLattice::grade(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw DomainError("unknown grade '" + std::string(name) + "'");
}

Grade GradeLattice::at(std::size_t rank) const {
  if (rank >= names_.size()) throw DomainError("grade rank out of range");
  return Grade(names_[rank], rank);
}

bool GradeLattice::contains(const Grade& g) const {
  return g.rank() < names_.size() && names_[g.rank()] == g.name();
}

std::size_t GradeLattice::index_of(const Grade& g) const {
  if (!contains(g)) throw DomainError("grade '" + g.name() + "' is not in this lattice");
  return g.rank();
}

bool GradeLattice::is_bottom(const Grade& g) const { return index_of(g) == bottom_; }

bool GradeLattice::leq(const Grade& a, const Grade& b) const {
  return leq_[index_of(a)][index_of(b)];
}

bool GradeLattice::comparable(const Grade& a, const Grade& b) const {
  return leq(a, b) || leq(b, a);
}

Grade GradeLattice::meet(const Grade& a, const Grade& b) const {
  return at(meet_[index_of(a)][index_of(b)]);
}

Grade GradeLattice::join(const Grade& a, const Grade& b) const {
  return at(join_[index_of(a)][index_of(b)]);
}

std::vector<GradeLattice::OrderPair> GradeLattice::covering_pairs() const {
  const std::size_t n = names_.size();
  std::vector<OrderPair> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c)
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) covered = false;
      if (covered) out.emplace_back(names_[a], names_[b]);
    }
  return out;
}

}  // namespace revigis
