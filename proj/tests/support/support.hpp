#pragma once

// Shared helpers for the test programs: seeded random formulas and
// structures, and brute-force oracles that avoid the library's cylindric
// code paths.

#include <cstdint>
#include <random>
#include <vector>

#include "finvar/automorphism.hpp"
#include "finvar/closure.hpp"
#include "finvar/construction.hpp"
#include "finvar/formula.hpp"
#include "finvar/relation.hpp"
#include "finvar/structure.hpp"

namespace finvar::testing {

using Rng = std::mt19937_64;

// Primitive-only formula over v0..v(n-1) of depth at most `depth`.
Formula random_formula(Rng& rng, const Signature& signature, unsigned n, unsigned depth);

// Each tuple of each relation present with probability `density`.
Structure random_structure(Rng& rng, unsigned m, const Signature& signature, double density = 0.5);

// Random subset of M^arity, same density rule.
NAryRelation random_relation(Rng& rng, unsigned arity, unsigned m, double density = 0.5);

// Tuple-level oracles.
NAryRelation oracle_cylindrify(const NAryRelation& x, unsigned coordinate);
NAryRelation oracle_diagonal(unsigned n, unsigned m, unsigned i, unsigned j);
std::uint64_t oracle_count_R(unsigned n);  // size of the parity-rule R, counted over the hull
std::vector<Permutation> oracle_automorphisms(const Structure& s);  // all m! permutations

// A partition of M^n given as block_of per cell.
bool is_union_of_blocks(const std::vector<std::uint32_t>& block_of, const NAryRelation& x);
// Generators and C_i of every block are unions of blocks.
bool partition_is_closed(const std::vector<std::uint32_t>& block_of, const AlgebraClosure& closure);

// Same partition up to renaming of the block ids.
bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace finvar::testing
