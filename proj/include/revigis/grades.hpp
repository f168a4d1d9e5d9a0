#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revigis {

/// A symbolic reliability/quality label. The rank is the grade's position in
/// its lattice's linear extension; on a chain it is the position in the chain.
class Grade {
 public:
  Grade() = default;
  Grade(std::string name, std::size_t rank) : name_(std::move(name)), rank_(rank) {}

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }

  friend bool operator==(const Grade&, const Grade&) = default;

 private:
  std::string name_;
  std::size_t rank_ = 0;
};

/// A finite lattice of grades.
///
/// Construction validates the lattice axioms (partial order, unique meet and
/// join for every pair) and rejects anything else; a poset that is not a
/// lattice is never repaired. Elements are stored in a linear extension of the
/// order, so `rank()` grows along every chain and the bottom has rank 0.
class GradeLattice {
 public:
  using OrderPair = std::pair<std::string, std::string>;  // (lower, higher)

  /// none < tentative < reliable < very_reliable.
  static GradeLattice default_chain();
  /// Total order, lowest first.
  static GradeLattice chain(std::vector<std::string> names);
  /// Reflexive-transitive closure of `order` over `elements`.
  static GradeLattice from_order(std::vector<std::string> elements,
                                 const std::vector<OrderPair>& order);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  /// Throws DomainError when `name` is not an element.
  Grade grade(std::string_view name) const;
  std::optional<Grade> find(std::string_view name) const;
  Grade at(std::size_t rank) const;
  bool contains(const Grade& g) const;

  Grade bottom() const { return at(bottom_); }
  Grade top() const { return at(top_); }
  bool is_bottom(const Grade& g) const;
  bool is_chain() const { return chain_; }

  bool leq(const Grade& a, const Grade& b) const;
  bool comparable(const Grade& a, const Grade& b) const;
  Grade meet(const Grade& a, const Grade& b) const;
  Grade join(const Grade& a, const Grade& b) const;

  /// Hasse diagram edges (lower, higher), in rank order.
  std::vector<OrderPair> covering_pairs() const;

  friend bool operator==(const GradeLattice& a, const GradeLattice& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  GradeLattice() = default;
  std::size_t index_of(const Grade& g) const;

  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  bool chain_ = false;
};

}  // namespace revigis
