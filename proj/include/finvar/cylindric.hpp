#pragma once

#include <cstdint>
#include <span>

#include "finvar/formula.hpp"
#include "finvar/relation.hpp"

namespace finvar {

// The ambient space M^n of an n-variable evaluation. Every relation handed to
// these operations must have arity n over the same universe.
class CylindricSpace {
 public:
  CylindricSpace(unsigned dimension, unsigned universe_size);

  unsigned dimension() const { return dimension_; }
  unsigned universe_size() const { return universe_size_; }
  std::uint64_t cell_count() const { return cell_count_; }
  // Distance between cells that differ by one in the given coordinate.
  std::uint64_t stride(unsigned coordinate) const { return strides_[coordinate]; }

  NAryRelation empty() const { return NAryRelation(dimension_, universe_size_); }
  NAryRelation full() const { return NAryRelation::full(dimension_, universe_size_); }

  NAryRelation complement(const NAryRelation& x) const;
  NAryRelation intersect(const NAryRelation& x, const NAryRelation& y) const;
  NAryRelation unite(const NAryRelation& x, const NAryRelation& y) const;

  // C_i X: tuples that agree with a member of X everywhere except possibly at i.
  NAryRelation cylindrify(unsigned coordinate, const NAryRelation& x) const;
  // d_ij: tuples whose i-th and j-th entries coincide.
  NAryRelation diagonal(unsigned i, unsigned j) const;

  // Meaning of the atom P(v_args[0], ..., v_args[k-1]) where table interprets
  // P: all t in M^n with (t[args[0]], ..., t[args[k-1]]) in table. Repeated
  // and permuted arguments are handled directly.
  NAryRelation reindex(const NAryRelation& table, std::span<const VarIndex> args) const;
  // V x M^(n-k) for a k-ary V with k <= n.
  NAryRelation lift(const NAryRelation& table) const;

  void check(const NAryRelation& x) const;

  friend bool operator==(const CylindricSpace& a, const CylindricSpace& b) {
    return a.dimension_ == b.dimension_ && a.universe_size_ == b.universe_size_;
  }

 private:
  void check_coordinate(unsigned coordinate) const;

  unsigned dimension_;
  unsigned universe_size_;
  std::uint64_t cell_count_;
  std::vector<std::uint64_t> strides_;
};

}  // namespace finvar
