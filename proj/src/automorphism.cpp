#include "finvar/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "finvar/error.hpp"

namespace finvar {

bool preserves(const Structure& structure, const Permutation& perm) {
  for (const auto& [name, table] : structure.relations()) {
    bool ok = true;
    Tuple image(table.arity());
    table.for_each_cell([&](std::uint64_t cell) {
      if (!ok) return;
      Tuple t = table.tuple_of(cell);
      for (std::size_t k = 0; k < t.size(); ++k) image[k] = perm[t[k]];
      ok = table.contains(image);
    });
    // An injective map of a finite table into itself is onto.
    if (!ok) return false;
  }
  return true;
}

std::vector<Permutation> automorphisms(const Structure& structure, const std::vector<NAryRelation>& fixed_sorts) {
  const unsigned m = structure.universe_size();
  std::vector<int> sort_of(m, -1);
  std::vector<std::vector<Element>> members(fixed_sorts.size());
  for (std::size_t s = 0; s < fixed_sorts.size(); ++s) {
    if (fixed_sorts[s].arity() != 1 || fixed_sorts[s].universe_size() != m)
      throw DimensionError("sorts must be unary relations over the structure's universe");
    fixed_sorts[s].for_each_cell([&](std::uint64_t e) {
      if (sort_of[e] >= 0) throw Error("sorts overlap at element " + std::to_string(e));
      sort_of[e] = static_cast<int>(s);
      members[s].push_back(static_cast<Element>(e));
    });
  }
  for (Element e = 0; e < m; ++e)
    if (sort_of[e] < 0) throw Error("sorts do not cover element " + std::to_string(e));

  // Odometer over the per-sort arrangements.
  std::vector<std::vector<Element>> images = members;
  std::vector<Permutation> out;
  while (true) {
    Permutation perm(m);
    for (std::size_t s = 0; s < members.size(); ++s)
      for (std::size_t k = 0; k < members[s].size(); ++k) perm[members[s][k]] = images[s][k];
    if (preserves(structure, perm)) out.push_back(std::move(perm));
    std::size_t s = images.size();
    while (s > 0) {
      if (std::next_permutation(images[s - 1].begin(), images[s - 1].end())) break;
      --s;  // next_permutation wrapped back to sorted order
    }
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> automorphisms_exhaustive(const Structure& structure) {
  const unsigned m = structure.universe_size();
  if (m > 11) throw DimensionError("exhaustive automorphism search is limited to 11 elements");
  Permutation perm(m);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Permutation> out;
  do {
    if (preserves(structure, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<NAryRelation> projection_sorts(const Structure& structure) {
  const unsigned m = structure.universe_size();
  std::vector<std::vector<bool>> signature(m);
  for (const auto& [name, table] : structure.relations())
    for (unsigned c = 0; c < table.arity(); ++c) {
      NAryRelation p = table.project(c);
      for (Element e = 0; e < m; ++e) signature[e].push_back(p.test(e));
    }
  std::map<std::vector<bool>, std::size_t> index;
  std::vector<NAryRelation> out;
  for (Element e = 0; e < m; ++e) {
    auto [it, fresh] = index.emplace(signature[e], out.size());
    if (fresh) out.emplace_back(1, m);
    out[it->second].set(e);
  }
  return out;
}

}  // namespace finvar
