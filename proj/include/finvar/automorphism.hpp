#pragma once

#include <vector>

#include "finvar/relation.hpp"
#include "finvar/structure.hpp"

namespace finvar {

// perm[e] is the image of element e.
using Permutation = std::vector<Element>;

// All permutations that map each sort onto itself and preserve every
// interpreted relation exactly, in lexicographic order; the identity is
// always among them. The sorts must be unary tables partitioning the
// universe. Definable sets are preserved by every automorphism, so passing
// definable sorts loses nothing.
std::vector<Permutation> automorphisms(const Structure& structure, const std::vector<NAryRelation>& fixed_sorts);

// Audit variant: tries all m! permutations.
std::vector<Permutation> automorphisms_exhaustive(const Structure& structure);

bool preserves(const Structure& structure, const Permutation& perm);

// The partition of the universe generated by all coordinate projections of
// all relations. Each class is definable.
std::vector<NAryRelation> projection_sorts(const Structure& structure);

}  // namespace finvar
