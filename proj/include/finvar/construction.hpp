#pragma once

// The counterexample model for n-variable Beth definability: a universe of
// 2n+1 elements split into U_0 = {a0, a1, a2} and two-element sorts
// U_1..U_(n-1), an n-ary R inside the hull T = U_0 x ... x U_(n-1) that cuts
// T by a parity rule, and the 3-cycle S on U_0. Also builds the theory Th
// pinning this model down and the implicit definition Sigma(D) of {a0}.

#include <map>
#include <string>
#include <vector>

#include "finvar/automorphism.hpp"
#include "finvar/formula.hpp"
#include "finvar/relation.hpp"
#include "finvar/structure.hpp"

namespace finvar {

struct ConstructionOptions {
  // With include_s = false (n >= 4 only) S is left out of the signature and
  // |U_0| = 3 is stated directly with four variables.
  bool include_s = true;
};

struct PaperModel {
  unsigned n = 0;
  Structure structure{1};
  std::map<std::string, Element> labels;  // a0, a1, a2, b0, b1, c0, c1, u3_0, ...
  std::vector<NAryRelation> carriers;     // U_0 .. U_(n-1)
  NAryRelation hull{1, 1};                // T

  std::string label_of(Element e) const;
  std::string describe(const NAryRelation& unary) const;  // "{a0, a1}", names sorted
};

struct Axiom {
  std::string label;
  Formula formula;
  std::string note;  // how the emitted form relates to the displayed text, if it differs
};

PaperModel build_model(unsigned n, const ConstructionOptions& options = {});
std::vector<Axiom> build_theory(unsigned n, const ConstructionOptions& options = {});
std::vector<Axiom> build_sigma(unsigned n);

Signature theory_signature(unsigned n, const ConstructionOptions& options = {});
Signature sigma_signature(unsigned n, const ConstructionOptions& options = {});

// Image of the model under an element permutation; labels follow elements.
PaperModel relabel(const PaperModel& model, const Permutation& perm);

// Formula building blocks, all within v0..v(n-1).
Formula r_atom(unsigned n);                                    // R(v0, ..., v(n-1))
Formula sort_formula(unsigned n, unsigned sort, VarIndex var);  // U_sort(v_var), Tarski-substituted off the diagonal
Formula hull_formula(unsigned n);                               // T
Formula big_r(unsigned n);
Formula at_least_two(unsigned n, unsigned sort);
Formula at_most_two(unsigned n, unsigned sort);

}  // namespace finvar
