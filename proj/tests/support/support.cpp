#include "support.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace finvar::testing {

namespace {

std::vector<std::vector<Element>> all_tuples(unsigned arity, unsigned m) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> t(arity, 0);
  while (true) {
    out.push_back(t);
    unsigned k = arity;
    while (k > 0 && ++t[k - 1] == m) t[--k] = 0;
    if (k == 0) return out;
  }
}

}  // namespace

Formula random_formula(Rng& rng, const Signature& signature, unsigned n, unsigned depth) {
  auto pick = [&](unsigned bound) { return static_cast<unsigned>(std::uniform_int_distribution<unsigned>(0, bound - 1)(rng)); };
  if (depth == 0 || pick(4) == 0) {
    const auto& entries = signature.entries();
    unsigned choice = pick(static_cast<unsigned>(entries.size()) + 1);
    if (choice == entries.size()) {
      VarIndex a = pick(n);
      return eq(a, pick(n));
    }
    auto it = std::next(entries.begin(), choice);
    std::vector<VarIndex> args(it->second);
    for (auto& a : args) a = pick(n);
    return atom(it->first, std::move(args));
  }
  switch (pick(3)) {
    case 0:
      return negate(random_formula(rng, signature, n, depth - 1));
    case 1: {
      Formula lhs = random_formula(rng, signature, n, depth - 1);
      return conj(lhs, random_formula(rng, signature, n, depth - 1));
    }
    default: {
      VarIndex v = pick(n);
      return exists(v, random_formula(rng, signature, n, depth - 1));
    }
  }
}

NAryRelation random_relation(Rng& rng, unsigned arity, unsigned m, double density) {
  std::bernoulli_distribution coin(density);
  NAryRelation r(arity, m);
  for (std::uint64_t c = 0; c < r.cell_count(); ++c)
    if (coin(rng)) r.set(c);
  return r;
}

Structure random_structure(Rng& rng, unsigned m, const Signature& signature, double density) {
  Structure s(m);
  for (const auto& [name, arity] : signature.entries()) s.add_relation(name, random_relation(rng, arity, m, density));
  return s;
}

NAryRelation oracle_cylindrify(const NAryRelation& x, unsigned coordinate) {
  const unsigned m = x.universe_size();
  NAryRelation out(x.arity(), m);
  for (auto t : all_tuples(x.arity(), m)) {
    std::vector<Element> probe = t;
    for (Element v = 0; v < m; ++v) {
      probe[coordinate] = v;
      if (x.contains(probe)) {
        out.insert(t);
        break;
      }
    }
  }
  return out;
}

NAryRelation oracle_diagonal(unsigned n, unsigned m, unsigned i, unsigned j) {
  NAryRelation out(n, m);
  for (auto t : all_tuples(n, m))
    if (t[i] == t[j]) out.insert(t);
  return out;
}

std::uint64_t oracle_count_R(unsigned n) {
  // Hull elements by position: 3 choices at 0, 2 elsewhere. A tuple is in R
  // when (first is a0) == (number of second elements is even).
  std::uint64_t count = 0;
  for (unsigned first = 0; first < 3; ++first)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      bool even = std::popcount(mask) % 2 == 0;
      if ((first == 0) == even) ++count;
    }
  return count;
}

std::vector<Permutation> oracle_automorphisms(const Structure& s) {
  const unsigned m = s.universe_size();
  Permutation p(m);
  std::iota(p.begin(), p.end(), Element{0});
  std::vector<Permutation> out;
  do {
    bool ok = true;
    for (const auto& [name, table] : s.relations()) {
      for (auto t : all_tuples(table.arity(), m)) {
        std::vector<Element> image(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) image[k] = p[t[k]];
        if (table.contains(t) != table.contains(image)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool is_union_of_blocks(const std::vector<std::uint32_t>& block_of, const NAryRelation& x) {
  std::map<std::uint32_t, int> state;  // 1 inside, 2 outside, 3 mixed
  for (std::uint64_t c = 0; c < block_of.size(); ++c) state[block_of[c]] |= x.test(c) ? 1 : 2;
  return std::none_of(state.begin(), state.end(), [](const auto& kv) { return kv.second == 3; });
}

bool partition_is_closed(const std::vector<std::uint32_t>& block_of, const AlgebraClosure& closure) {
  const auto& space = closure.space();
  for (const auto& g : closure.generators())
    if (!is_union_of_blocks(block_of, g.meaning)) return false;
  std::map<std::uint32_t, NAryRelation> blocks;
  for (std::uint64_t c = 0; c < block_of.size(); ++c) blocks.try_emplace(block_of[c], space.empty()).first->second.set(c);
  for (const auto& [id, block] : blocks)
    for (unsigned i = 0; i < space.dimension(); ++i)
      if (!is_union_of_blocks(block_of, oracle_cylindrify(block, i))) return false;
  return true;
}

bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) return false;
  std::map<std::uint32_t, std::uint32_t> forward, backward;
  for (std::size_t c = 0; c < a.size(); ++c) {
    auto [f, fresh_f] = forward.emplace(a[c], b[c]);
    auto [g, fresh_g] = backward.emplace(b[c], a[c]);
    if (f->second != b[c] || g->second != a[c]) return false;
  }
  return true;
}

}  // namespace finvar::testing
