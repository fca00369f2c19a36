#include "finvar/implicit.hpp"

#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"

namespace finvar {

std::vector<NAryRelation> enumerate_sigma_solutions(const std::vector<Formula>& sigma, const std::string& target,
                                                    const Structure& structure, const CylindricSpace& space) {
  const unsigned m = structure.universe_size();
  if (m > 20) throw DimensionError("implicit definition search is limited to universes of at most 20 elements");
  if (structure.has_relation(target)) throw SignatureError("structure already interprets '" + target + "'");

  Structure expanded = structure;
  expanded.add_relation(target, NAryRelation(1, m));
  for (const Formula& f : sigma) check_formula(expanded, f, space);

  // Subformulas not mentioning the target keep their cached meanings across candidates.
  Evaluator ev(std::move(expanded), space);
  std::vector<NAryRelation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    NAryRelation candidate(1, m);
    for (Element e = 0; e < m; ++e)
      if (mask >> e & 1) candidate.set(e);
    ev.rebind(target, candidate);
    bool ok = true;
    for (const Formula& f : sigma) {
      if (!ev.holds(f)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(candidate));
  }
  // mask order is already ascending bit-table order for unary tables
  return out;
}

std::vector<NAryRelation> solutions_of_implicit_definition(const ImplicitDefinitionProblem& problem,
                                                           const Structure& structure, const CylindricSpace& space) {
  Evaluator ev(structure, space);
  for (std::size_t k = 0; k < problem.theory.size(); ++k) {
    check_formula(structure, problem.theory[k], space);
    if (!ev.holds(problem.theory[k]))
      throw Error("structure does not satisfy theory axiom " + std::to_string(k) + ": " + render(problem.theory[k]));
  }
  return enumerate_sigma_solutions(problem.sigma, problem.target, structure, space);
}

}  // namespace finvar
