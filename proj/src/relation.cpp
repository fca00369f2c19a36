#include "finvar/relation.hpp"

#include <bit>
#include <string>

#include "finvar/error.hpp"

namespace finvar {

namespace {
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 32;
}

std::uint64_t checked_cell_count(unsigned arity, unsigned universe_size) {
  if (arity == 0) throw DimensionError("arity must be >= 1");
  if (universe_size == 0) throw DimensionError("universe size must be >= 1");
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < arity; ++i) {
    cells *= universe_size;
    if (cells > kMaxCells)
      throw DimensionError("relation table " + std::to_string(universe_size) + "^" + std::to_string(arity) +
                           " exceeds the supported size");
  }
  return cells;
}

NAryRelation::NAryRelation(unsigned arity, unsigned universe_size)
    : arity_(arity),
      universe_size_(universe_size),
      cell_count_(checked_cell_count(arity, universe_size)),
      words_((cell_count_ + 63) / 64, 0) {}

NAryRelation NAryRelation::full(unsigned arity, unsigned universe_size) {
  NAryRelation r(arity, universe_size);
  for (auto& w : r.words_) w = ~std::uint64_t{0};
  r.clear_padding();
  return r;
}

NAryRelation NAryRelation::from_tuples(unsigned arity, unsigned universe_size, std::span<const Tuple> tuples) {
  NAryRelation r(arity, universe_size);
  for (const Tuple& t : tuples) r.insert(t);
  return r;
}

NAryRelation NAryRelation::from_tuples(unsigned arity, unsigned universe_size, std::initializer_list<Tuple> tuples) {
  return from_tuples(arity, universe_size, std::span<const Tuple>(tuples.begin(), tuples.size()));
}

NAryRelation NAryRelation::unary(unsigned universe_size, std::initializer_list<Element> elements) {
  NAryRelation r(1, universe_size);
  for (Element e : elements) r.insert(std::span<const Element>(&e, 1));
  return r;
}

std::uint64_t NAryRelation::cell_of(std::span<const Element> tuple) const {
  if (tuple.size() != arity_)
    throw DimensionError("tuple of length " + std::to_string(tuple.size()) + " for a relation of arity " +
                         std::to_string(arity_));
  std::uint64_t cell = 0;
  for (Element e : tuple) {
    if (e >= universe_size_)
      throw DimensionError("element " + std::to_string(e) + " outside universe of size " +
                           std::to_string(universe_size_));
    cell = cell * universe_size_ + e;
  }
  return cell;
}

Tuple NAryRelation::tuple_of(std::uint64_t cell) const {
  Tuple t(arity_);
  for (unsigned i = arity_; i-- > 0;) {
    t[i] = static_cast<Element>(cell % universe_size_);
    cell /= universe_size_;
  }
  return t;
}

bool NAryRelation::contains(std::initializer_list<Element> tuple) const {
  return contains(std::span<const Element>(tuple.begin(), tuple.size()));
}

std::uint64_t NAryRelation::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

bool NAryRelation::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

void NAryRelation::clear_padding() {
  unsigned tail = static_cast<unsigned>(cell_count_ & 63);
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

void NAryRelation::check_compatible(const NAryRelation& other) const {
  if (arity_ != other.arity_ || universe_size_ != other.universe_size_)
    throw DimensionError("relations of shape " + std::to_string(universe_size_) + "^" + std::to_string(arity_) +
                         " and " + std::to_string(other.universe_size_) + "^" + std::to_string(other.arity_) +
                         " cannot be combined");
}

NAryRelation NAryRelation::complement() const {
  NAryRelation r = *this;
  for (auto& w : r.words_) w = ~w;
  r.clear_padding();
  return r;
}

NAryRelation& NAryRelation::operator&=(const NAryRelation& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

NAryRelation& NAryRelation::operator|=(const NAryRelation& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

NAryRelation NAryRelation::operator&(const NAryRelation& other) const {
  NAryRelation r = *this;
  r &= other;
  return r;
}

NAryRelation NAryRelation::operator|(const NAryRelation& other) const {
  NAryRelation r = *this;
  r |= other;
  return r;
}

NAryRelation NAryRelation::operator-(const NAryRelation& other) const {
  check_compatible(other);
  NAryRelation r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~other.words_[i];
  return r;
}

bool NAryRelation::subset_of(const NAryRelation& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool NAryRelation::disjoint_from(const NAryRelation& other) const {
  check_compatible(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return false;
  return true;
}

NAryRelation NAryRelation::project(unsigned coordinate) const {
  if (coordinate >= arity_) throw DimensionError("projection coordinate out of range");
  NAryRelation out(1, universe_size_);
  for_each_cell([&](std::uint64_t cell) {
    Element e = tuple_of(cell)[coordinate];
    out.insert(std::span<const Element>(&e, 1));
  });
  return out;
}

std::vector<Tuple> NAryRelation::tuples() const {
  std::vector<Tuple> out;
  for_each_cell([&](std::uint64_t cell) { out.push_back(tuple_of(cell)); });
  return out;
}

void NAryRelation::for_each_cell(const std::function<void(std::uint64_t)>& fn) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      unsigned b = static_cast<unsigned>(std::countr_zero(bits));
      fn(w * 64 + b);
      bits &= bits - 1;
    }
  }
}

bool operator<(const NAryRelation& a, const NAryRelation& b) {
  if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
  if (a.universe_size_ != b.universe_size_) return a.universe_size_ < b.universe_size_;
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  return false;
}

}  // namespace finvar
