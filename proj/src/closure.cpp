#include "finvar/closure.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"

namespace finvar {

namespace {

// All variable tuples of the given length over v0..v(n-1), lexicographic.
std::vector<std::vector<VarIndex>> argument_tuples(unsigned arity, unsigned n) {
  std::vector<std::vector<VarIndex>> out;
  std::vector<VarIndex> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    unsigned k = arity;
    while (k > 0) {
      if (++cur[k - 1] < n) break;
      cur[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

bool bit(const Bits& b, std::size_t k) { return b[k / 64] >> (k % 64) & 1; }
void set_bit(Bits& b, std::size_t k) { b[k / 64] |= std::uint64_t{1} << (k % 64); }

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

// Greedy cover: signed literals whose conjunction holds on part `self` and
// fails on every other part. holds[l] marks the parts where literal l holds.
std::vector<std::pair<std::size_t, bool>> separating_literals(std::size_t self, std::size_t parts,
                                                              const std::vector<Bits>& holds,
                                                              std::span<const std::uint64_t> cost) {
  const std::size_t words = (parts + 63) / 64;
  Bits remaining(words, 0);
  for (std::size_t p = 0; p < parts; ++p)
    if (p != self) set_bit(remaining, p);
  std::size_t left = parts - 1;
  std::vector<std::pair<std::size_t, bool>> chosen;
  while (left > 0) {
    std::size_t best = SIZE_MAX;
    std::uint64_t best_gain = 0, best_cost = 1;
    for (std::size_t l = 0; l < holds.size(); ++l) {
      const bool value = bit(holds[l], self);
      std::uint64_t gain = 0;
      for (std::size_t w = 0; w < words; ++w)
        gain += static_cast<std::uint64_t>(std::popcount(remaining[w] & (value ? ~holds[l][w] : holds[l][w])));
      if (gain == 0) continue;
      const std::uint64_t c = add_sat(cost[l], value ? 0 : 1);
      if (best == SIZE_MAX || gain * best_cost > best_gain * c) {
        best = l;
        best_gain = gain;
        best_cost = c;
      }
    }
    if (best == SIZE_MAX) throw Error("closure: parts cannot be separated");
    const bool value = bit(holds[best], self);
    for (std::size_t w = 0; w < words; ++w) remaining[w] &= value ? holds[best][w] : ~holds[best][w];
    left -= best_gain;
    chosen.emplace_back(best, value);
  }
  return chosen;
}

class Refiner {
 public:
  Refiner(const CylindricSpace& space) : space_(space), block_of_(space.cell_count(), 0) {}

  // Partition by the given meanings, then give every block a conjunction of
  // signed generators that singles it out.
  void seed(const std::vector<ClosureGenerator>& gens, std::span<const std::size_t> order) {
    std::uint32_t count = 1;
    for (std::size_t k : order) {
      const NAryRelation& x = gens[k].meaning;
      std::vector<std::uint64_t> inside(count, 0), total(count, 0);
      for (std::uint64_t c = 0; c < block_of_.size(); ++c) {
        ++total[block_of_[c]];
        if (x.test(c)) ++inside[block_of_[c]];
      }
      const std::uint32_t old_count = count;
      std::vector<std::uint32_t> moved_to(old_count, UINT32_MAX);
      for (std::uint32_t b = 0; b < old_count; ++b)
        if (inside[b] != 0 && inside[b] != total[b]) moved_to[b] = count++;
      for (std::uint64_t c = 0; c < block_of_.size(); ++c)
        if (x.test(c) && moved_to[block_of_[c]] != UINT32_MAX) block_of_[c] = moved_to[block_of_[c]];
    }

    // One literal per distinct nonconstant block pattern, cheapest first.
    const std::size_t words = (count + 63) / 64;
    std::map<Bits, std::size_t> by_pattern;
    std::vector<Bits> holds;
    std::vector<std::uint64_t> cost;
    std::vector<Formula> lits;
    std::vector<std::uint64_t> first_cell(count, UINT64_MAX);
    for (std::uint64_t c = 0; c < block_of_.size(); ++c)
      if (first_cell[block_of_[c]] == UINT64_MAX) first_cell[block_of_[c]] = c;
    for (std::size_t k : order) {
      Bits pattern(words, 0);
      std::size_t ones = 0;
      for (std::uint32_t b = 0; b < count; ++b)
        if (gens[k].meaning.test(first_cell[b])) {
          set_bit(pattern, b);
          ++ones;
        }
      if (ones == 0 || ones == count) continue;
      const std::uint64_t size = tree_size(gens[k].formula);
      auto [it, fresh] = by_pattern.emplace(pattern, holds.size());
      if (fresh) {
        holds.push_back(std::move(pattern));
        cost.push_back(size);
        lits.push_back(gens[k].formula);
      } else if (size < cost[it->second]) {
        cost[it->second] = size;
        lits[it->second] = gens[k].formula;
      }
    }

    witness_.clear();
    size_.clear();
    for (std::uint32_t b = 0; b < count; ++b) {
      if (count == 1) {
        witness_.push_back(verum());
        size_.push_back(tree_size(witness_.back()));
        break;
      }
      std::vector<Formula> parts;
      std::uint64_t size = 0;
      for (auto [l, value] : separating_literals(b, count, holds, cost)) {
        parts.push_back(value ? lits[l] : negate(lits[l]));
        size = add_sat(size, add_sat(cost[l], value ? 1 : 2));
      }
      witness_.push_back(conj_all(parts));
      size_.push_back(size - 1);
    }
  }

  // Splits every block by the family {C_i(b) : b a current block}. A cell t
  // lies in C_i(b) iff b occurs in t's i-fiber, so a block splits by the set
  // of blocks seen along the fibers of its cells.
  bool refine_along(unsigned i) {
    const unsigned m = space_.universe_size();
    const std::uint64_t stride = space_.stride(i);
    const std::uint64_t span = stride * m;
    const std::uint64_t cells = space_.cell_count();

    std::map<std::vector<std::uint32_t>, std::uint32_t> class_ids;
    std::vector<const std::vector<std::uint32_t>*> class_sets;
    std::vector<std::uint32_t> fiber_class(cells / m);
    std::vector<std::uint32_t> seen;
    seen.reserve(m);
    std::uint64_t fiber = 0;
    for (std::uint64_t hi = 0; hi < cells; hi += span) {
      for (std::uint64_t lo = 0; lo < stride; ++lo, ++fiber) {
        seen.clear();
        for (unsigned v = 0; v < m; ++v) seen.push_back(block_of_[hi + lo + v * stride]);
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        auto [it, fresh] = class_ids.emplace(seen, static_cast<std::uint32_t>(class_sets.size()));
        if (fresh) class_sets.push_back(&it->first);
        fiber_class[fiber] = it->second;
      }
    }
    auto fiber_of = [&](std::uint64_t cell) { return (cell / span) * stride + cell % stride; };

    // Distinct fiber classes per block, in order of first occurrence.
    const std::uint32_t count = static_cast<std::uint32_t>(witness_.size());
    std::vector<std::vector<std::uint32_t>> parts(count);
    std::unordered_map<std::uint64_t, std::uint32_t> target;
    for (std::uint64_t c = 0; c < cells; ++c) {
      std::uint32_t b = block_of_[c];
      std::uint32_t fc = fiber_class[fiber_of(c)];
      std::uint64_t key = (std::uint64_t{b} << 32) | fc;
      if (target.find(key) == target.end()) {
        target.emplace(key, 0);
        parts[b].push_back(fc);
      }
    }

    const std::vector<Formula> before = witness_;
    const std::vector<std::uint64_t> before_size = size_;
    std::unordered_map<std::uint32_t, Formula> literal;
    auto cyl = [&](std::uint32_t b) -> const Formula& {
      auto it = literal.find(b);
      if (it == literal.end()) it = literal.emplace(b, exists(i, before[b])).first;
      return it->second;
    };

    bool changed = false;
    for (std::uint32_t b = 0; b < count; ++b) {
      const std::size_t k = parts[b].size();
      if (k < 2) {
        target[(std::uint64_t{b} << 32) | parts[b][0]] = b;
        continue;
      }
      changed = true;
      // Candidate literals: blocks seen from some parts but not all.
      std::map<std::uint32_t, std::size_t> seen_by;
      for (std::size_t p = 0; p < k; ++p)
        for (std::uint32_t other : *class_sets[parts[b][p]]) ++seen_by[other];
      std::vector<std::uint32_t> candidates;
      for (auto [other, hits] : seen_by)
        if (hits < k) candidates.push_back(other);
      const std::size_t words = (k + 63) / 64;
      std::vector<Bits> holds(candidates.size(), Bits(words, 0));
      std::vector<std::uint64_t> cost(candidates.size());
      for (std::size_t l = 0; l < candidates.size(); ++l) {
        cost[l] = add_sat(before_size[candidates[l]], 1);
        for (std::size_t p = 0; p < k; ++p) {
          const auto& set = *class_sets[parts[b][p]];
          if (std::binary_search(set.begin(), set.end(), candidates[l])) set_bit(holds[l], p);
        }
      }
      for (std::size_t p = 0; p < k; ++p) {
        Formula w = before[b];
        std::uint64_t size = before_size[b];
        for (auto [l, value] : separating_literals(p, k, holds, cost)) {
          const Formula& c = cyl(candidates[l]);
          w = conj(w, value ? c : negate(c));
          size = add_sat(size, add_sat(cost[l], value ? 1 : 2));
        }
        std::uint32_t id = b;
        if (p > 0) {
          id = static_cast<std::uint32_t>(witness_.size());
          witness_.push_back(w);
          size_.push_back(size);
        } else {
          witness_[b] = w;
          size_[b] = size;
        }
        target[(std::uint64_t{b} << 32) | parts[b][p]] = id;
      }
    }
    if (changed)
      for (std::uint64_t c = 0; c < cells; ++c)
        block_of_[c] = target[(std::uint64_t{block_of_[c]} << 32) | fiber_class[fiber_of(c)]];
    return changed;
  }

  AlgebraClosure::Level snapshot() const { return {block_of_, witness_, size_}; }

 private:
  const CylindricSpace& space_;
  std::vector<std::uint32_t> block_of_;
  std::vector<Formula> witness_;
  std::vector<std::uint64_t> size_;
};

}  // namespace

NAryRelation AlgebraClosure::atom_relation(std::uint32_t id) const {
  if (id >= atoms_.size()) throw DimensionError("atom id out of range");
  NAryRelation out = space_.empty();
  for (std::uint64_t c = 0; c < atom_of_.size(); ++c)
    if (atom_of_[c] == id) out.set(c);
  return out;
}

bool AlgebraClosure::is_union_of_atoms(const NAryRelation& x) const {
  space_.check(x);
  std::vector<std::uint64_t> inside(atoms_.size(), 0);
  x.for_each_cell([&](std::uint64_t c) { ++inside[atom_of_[c]]; });
  for (std::size_t a = 0; a < atoms_.size(); ++a)
    if (inside[a] != 0 && inside[a] != atoms_[a].size) return false;
  return true;
}

std::vector<NAryRelation> AlgebraClosure::atom_projections(unsigned coordinate) const {
  if (coordinate >= space_.dimension()) throw DimensionError("projection coordinate out of range");
  std::vector<NAryRelation> out(atoms_.size(), NAryRelation(1, space_.universe_size()));
  const std::uint64_t stride = space_.stride(coordinate);
  const unsigned m = space_.universe_size();
  for (std::uint64_t c = 0; c < atom_of_.size(); ++c)
    out[atom_of_[c]].set((c / stride) % m);
  return out;
}

AlgebraClosure close(const Structure& structure, const CylindricSpace& space, const ClosureOptions& options) {
  if (structure.universe_size() != space.universe_size())
    throw DimensionError("structure universe does not match the space");
  const unsigned n = space.dimension();

  AlgebraClosure closure(space);
  Evaluator ev(structure, space);
  for (const auto& [name, arity] : structure.signature().entries()) {
    for (auto& args : argument_tuples(arity, n)) {
      Formula g = atom(name, args);
      NAryRelation meaning = ev.evaluate(g);
      if (!meaning.empty()) closure.generators_.push_back({render(g), g, std::move(meaning)});
    }
  }
  for (VarIndex i = 0; i < n; ++i)
    for (VarIndex j = i + 1; j < n; ++j) {
      Formula g = eq(i, j);
      closure.generators_.push_back({render(g), g, space.diagonal(i, j)});
    }

  std::vector<std::size_t> order(closure.generators_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<unsigned> coords(n);
  std::iota(coords.begin(), coords.end(), 0U);
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  if (options.shuffle_seed) {
    std::shuffle(order.begin(), order.end(), rng);
    std::shuffle(coords.begin(), coords.end(), rng);
  }

  Refiner refiner(space);
  refiner.seed(closure.generators_, order);
  closure.levels_.push_back(refiner.snapshot());

  std::deque<unsigned> queue(coords.begin(), coords.end());
  std::vector<bool> queued(n, true);
  while (!queue.empty()) {
    unsigned i = queue.front();
    queue.pop_front();
    queued[i] = false;
    ++closure.passes_;
    if (!refiner.refine_along(i)) continue;
    closure.levels_.push_back(refiner.snapshot());
    std::vector<unsigned> again;
    for (unsigned j : coords)
      if (j != i && !queued[j]) again.push_back(j);
    if (options.shuffle_seed) std::shuffle(again.begin(), again.end(), rng);
    for (unsigned j : again) {
      queue.push_back(j);
      queued[j] = true;
    }
  }

  // Canonical numbering by first cell.
  const auto& block_of = closure.levels_.back().block_of;
  const auto& witnesses = closure.levels_.back().witness;
  std::vector<std::uint32_t> renumber(witnesses.size(), UINT32_MAX);
  closure.atom_of_.resize(block_of.size());
  for (std::uint64_t c = 0; c < block_of.size(); ++c) {
    std::uint32_t& id = renumber[block_of[c]];
    if (id == UINT32_MAX) {
      id = static_cast<std::uint32_t>(closure.atoms_.size());
      closure.atoms_.push_back({id, 0, c, witnesses[block_of[c]]});
    }
    closure.atom_of_[c] = id;
    ++closure.atoms_[id].size;
  }
  return closure;
}

Definability is_definable(const AlgebraClosure& closure, const NAryRelation& x) {
  if (!closure.is_union_of_atoms(x)) return {false, std::nullopt};
  if (x.empty()) return {true, falsum()};
  if (x.is_full()) return {true, verum()};
  for (const auto& level : closure.levels()) {
    const std::size_t count = level.witness.size();
    std::vector<std::uint64_t> inside(count, 0), total(count, 0);
    for (std::uint64_t c = 0; c < level.block_of.size(); ++c) {
      ++total[level.block_of[c]];
      if (x.test(c)) ++inside[level.block_of[c]];
    }
    bool is_union = true;
    for (std::size_t b = 0; b < count && is_union; ++b) is_union = inside[b] == 0 || inside[b] == total[b];
    if (!is_union) continue;
    std::vector<Formula> in, out;
    std::uint64_t in_size = 0, out_size = 0;
    for (std::size_t b = 0; b < count; ++b) {
      if (inside[b] != 0) {
        in.push_back(level.witness[b]);
        in_size = add_sat(in_size, level.witness_size[b]);
      } else {
        out.push_back(level.witness[b]);
        out_size = add_sat(out_size, level.witness_size[b]);
      }
    }
    if (out_size < in_size) return {true, negate(disj_all(out))};
    return {true, disj_all(in)};
  }
  throw Error("closure levels do not end at the atom partition");
}

std::vector<NAryRelation> definable_unary_relations(const AlgebraClosure& closure) {
  const unsigned m = closure.space().universe_size();
  // V x M^(n-1) is a union of atoms iff V never separates the coordinate-0
  // projection of an atom, so V must be a union of the classes of elements
  // linked through shared atom projections.
  std::vector<unsigned> parent(m);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](unsigned e) {
    while (parent[e] != e) e = parent[e] = parent[parent[e]];
    return e;
  };
  for (const NAryRelation& p : closure.atom_projections(0)) {
    std::optional<unsigned> first;
    p.for_each_cell([&](std::uint64_t e) {
      if (!first) first = static_cast<unsigned>(e);
      else parent[find(static_cast<unsigned>(e))] = find(*first);
    });
  }
  std::vector<std::vector<Element>> classes;
  std::vector<int> class_of_root(m, -1);
  for (Element e = 0; e < m; ++e) {
    unsigned r = find(e);
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(class_of_root[r])].push_back(e);
  }
  if (classes.size() > 24) throw DimensionError("too many definable unary classes to enumerate");

  std::vector<NAryRelation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << classes.size()); ++mask) {
    NAryRelation v(1, m);
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (mask >> k & 1)
        for (Element e : classes[k]) v.set(e);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json atom_report(const AlgebraClosure& closure, const Signature& signature) {
  const auto& space = closure.space();
  std::vector<nlohmann::json> tuples(closure.atom_count(), nlohmann::json::array());
  NAryRelation scratch = space.empty();
  for (std::uint64_t c = 0; c < space.cell_count(); ++c) tuples[closure.atom_of(c)].push_back(scratch.tuple_of(c));
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : closure.atoms()) {
    atoms.push_back({{"id", a.id},
                     {"size", a.size},
                     {"witness", render(a.witness)},
                     {"restricted", is_restricted(a.witness, signature)},
                     {"tuples", std::move(tuples[a.id])}});
  }
  return {{"n", space.dimension()},
          {"universe_size", space.universe_size()},
          {"atom_count", closure.atom_count()},
          {"atoms", std::move(atoms)}};
}

}  // namespace finvar
