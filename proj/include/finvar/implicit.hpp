#pragma once

#include <string>
#include <vector>

#include "finvar/cylindric.hpp"
#include "finvar/formula.hpp"
#include "finvar/structure.hpp"

namespace finvar {

// A base theory together with an implicit definition of the unary symbol
// target. The sigma formulas may use target; the theory may not.
struct ImplicitDefinitionProblem {
  std::vector<Formula> theory;
  std::vector<Formula> sigma;
  std::string target = "D";
};

// Every unary D (out of all 2^m) for which each sigma formula holds in the
// structure expanded by D, ascending by bit table. No check of the theory.
std::vector<NAryRelation> enumerate_sigma_solutions(const std::vector<Formula>& sigma, const std::string& target,
                                                    const Structure& structure, const CylindricSpace& space);

// As above, but first requires that the structure satisfies the theory;
// throws Error otherwise.
std::vector<NAryRelation> solutions_of_implicit_definition(const ImplicitDefinitionProblem& problem,
                                                           const Structure& structure, const CylindricSpace& space);

}  // namespace finvar
