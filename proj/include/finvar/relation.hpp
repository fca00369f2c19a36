#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace finvar {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// A subset of M^k stored as a dense bit table over all m^k cells.
// The cell of <a0, ..., a(k-1)> is sum a_i * m^(k-1-i): coordinate 0 is the
// most significant digit. Serialization and hashing rely on this order.
class NAryRelation {
 public:
  NAryRelation(unsigned arity, unsigned universe_size);

  static NAryRelation full(unsigned arity, unsigned universe_size);
  // Duplicates are tolerated. Throws DimensionError on bad tuples.
  static NAryRelation from_tuples(unsigned arity, unsigned universe_size, std::span<const Tuple> tuples);
  static NAryRelation from_tuples(unsigned arity, unsigned universe_size, std::initializer_list<Tuple> tuples);
  static NAryRelation unary(unsigned universe_size, std::initializer_list<Element> elements);

  unsigned arity() const { return arity_; }
  unsigned universe_size() const { return universe_size_; }
  std::uint64_t cell_count() const { return cell_count_; }

  std::uint64_t cell_of(std::span<const Element> tuple) const;
  Tuple tuple_of(std::uint64_t cell) const;

  bool test(std::uint64_t cell) const { return (words_[cell >> 6] >> (cell & 63)) & 1U; }
  void set(std::uint64_t cell) { words_[cell >> 6] |= std::uint64_t{1} << (cell & 63); }
  void reset(std::uint64_t cell) { words_[cell >> 6] &= ~(std::uint64_t{1} << (cell & 63)); }

  bool contains(std::span<const Element> tuple) const { return test(cell_of(tuple)); }
  bool contains(std::initializer_list<Element> tuple) const;
  void insert(std::span<const Element> tuple) { set(cell_of(tuple)); }

  std::uint64_t count() const;
  bool empty() const;
  bool is_full() const { return count() == cell_count_; }

  // Set operations; operands must agree in arity and universe size.
  NAryRelation complement() const;
  NAryRelation operator&(const NAryRelation& other) const;
  NAryRelation operator|(const NAryRelation& other) const;
  NAryRelation operator-(const NAryRelation& other) const;
  NAryRelation& operator&=(const NAryRelation& other);
  NAryRelation& operator|=(const NAryRelation& other);
  bool subset_of(const NAryRelation& other) const;
  bool disjoint_from(const NAryRelation& other) const;

  // Projection onto one coordinate, computed by scanning the member tuples.
  NAryRelation project(unsigned coordinate) const;

  // Member tuples in ascending cell order.
  std::vector<Tuple> tuples() const;
  void for_each_cell(const std::function<void(std::uint64_t)>& fn) const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const NAryRelation&, const NAryRelation&) = default;
  // Orders by arity, universe, then the bit table read as a number with the
  // highest cell most significant.
  friend bool operator<(const NAryRelation& a, const NAryRelation& b);

 private:
  void check_compatible(const NAryRelation& other) const;
  void clear_padding();

  unsigned arity_;
  unsigned universe_size_;
  std::uint64_t cell_count_;
  std::vector<std::uint64_t> words_;
};

// m^k, throwing DimensionError when the table would be unreasonably large.
std::uint64_t checked_cell_count(unsigned arity, unsigned universe_size);

}  // namespace finvar
