#include "finvar/cylindric.hpp"

#include <numeric>
#include <string>

#include "finvar/error.hpp"

namespace finvar {

CylindricSpace::CylindricSpace(unsigned dimension, unsigned universe_size)
    : dimension_(dimension),
      universe_size_(universe_size),
      cell_count_(checked_cell_count(dimension, universe_size)),
      strides_(dimension) {
  std::uint64_t s = 1;
  for (unsigned i = dimension; i-- > 0;) {
    strides_[i] = s;
    s *= universe_size;
  }
}

void CylindricSpace::check(const NAryRelation& x) const {
  if (x.arity() != dimension_ || x.universe_size() != universe_size_)
    throw DimensionError("relation of shape " + std::to_string(x.universe_size()) + "^" + std::to_string(x.arity()) +
                         " used in space " + std::to_string(universe_size_) + "^" + std::to_string(dimension_));
}

void CylindricSpace::check_coordinate(unsigned coordinate) const {
  if (coordinate >= dimension_)
    throw DimensionError("coordinate " + std::to_string(coordinate) + " out of range for dimension " +
                         std::to_string(dimension_));
}

NAryRelation CylindricSpace::complement(const NAryRelation& x) const {
  check(x);
  return x.complement();
}

NAryRelation CylindricSpace::intersect(const NAryRelation& x, const NAryRelation& y) const {
  check(x);
  check(y);
  return x & y;
}

NAryRelation CylindricSpace::unite(const NAryRelation& x, const NAryRelation& y) const {
  check(x);
  check(y);
  return x | y;
}

NAryRelation CylindricSpace::cylindrify(unsigned coordinate, const NAryRelation& x) const {
  check(x);
  check_coordinate(coordinate);
  NAryRelation out = empty();
  const std::uint64_t lo_count = strides_[coordinate];
  const std::uint64_t block = lo_count * universe_size_;
  for (std::uint64_t hi = 0; hi < cell_count_; hi += block) {
    for (std::uint64_t lo = 0; lo < lo_count; ++lo) {
      const std::uint64_t base = hi + lo;
      bool any = false;
      for (unsigned v = 0; v < universe_size_ && !any; ++v) any = x.test(base + v * lo_count);
      if (any)
        for (unsigned v = 0; v < universe_size_; ++v) out.set(base + v * lo_count);
    }
  }
  return out;
}

NAryRelation CylindricSpace::diagonal(unsigned i, unsigned j) const {
  check_coordinate(i);
  check_coordinate(j);
  NAryRelation out = empty();
  const std::uint64_t si = strides_[i];
  const std::uint64_t sj = strides_[j];
  for (std::uint64_t cell = 0; cell < cell_count_; ++cell)
    if ((cell / si) % universe_size_ == (cell / sj) % universe_size_) out.set(cell);
  return out;
}

NAryRelation CylindricSpace::reindex(const NAryRelation& table, std::span<const VarIndex> args) const {
  if (table.arity() != args.size())
    throw DimensionError("atom with " + std::to_string(args.size()) + " arguments over a relation of arity " +
                         std::to_string(table.arity()));
  if (table.universe_size() != universe_size_) throw DimensionError("relation universe does not match the space");
  for (VarIndex v : args) check_coordinate(v);

  NAryRelation out = empty();
  std::vector<bool> pinned(dimension_, false);
  for (VarIndex v : args) pinned[v] = true;
  std::vector<unsigned> free_coords;
  for (unsigned c = 0; c < dimension_; ++c)
    if (!pinned[c]) free_coords.push_back(c);

  std::vector<Element> value(dimension_, 0);
  table.for_each_cell([&](std::uint64_t cell) {
    Tuple t = table.tuple_of(cell);
    std::vector<bool> seen(dimension_, false);
    for (std::size_t p = 0; p < args.size(); ++p) {
      if (seen[args[p]] && value[args[p]] != t[p]) return;
      seen[args[p]] = true;
      value[args[p]] = t[p];
    }
    for (unsigned c : free_coords) value[c] = 0;
    // Odometer over the unconstrained coordinates.
    while (true) {
      std::uint64_t target = 0;
      for (unsigned c = 0; c < dimension_; ++c) target += value[c] * strides_[c];
      out.set(target);
      std::size_t k = free_coords.size();
      while (k > 0) {
        unsigned c = free_coords[k - 1];
        if (++value[c] < universe_size_) break;
        value[c] = 0;
        --k;
      }
      if (k == 0) break;
    }
  });
  return out;
}

NAryRelation CylindricSpace::lift(const NAryRelation& table) const {
  if (table.arity() > dimension_) throw DimensionError("cannot lift a relation of arity above the dimension");
  std::vector<VarIndex> args(table.arity());
  std::iota(args.begin(), args.end(), VarIndex{0});
  return reindex(table, args);
}

}  // namespace finvar
