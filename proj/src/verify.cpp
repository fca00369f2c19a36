#include "finvar/verify.hpp"

#include <algorithm>
#include <sstream>

#include "finvar/automorphism.hpp"
#include "finvar/closure.hpp"
#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"
#include "finvar/implicit.hpp"

namespace finvar {

namespace {

constexpr const char* kHeader =
    "Checks run on the constructed model with 2n+1 elements. That Th has only this model up to "
    "isomorphism is not searched exhaustively; it is backed by satisfaction of Th, uniqueness of D "
    "and rigidity of a0 under all automorphisms.";

std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::vector<Formula> formulas_of(const std::vector<Axiom>& axioms) {
  std::vector<Formula> out;
  for (const auto& a : axioms) out.push_back(a.formula);
  return out;
}

std::string summarize(const FamilyComparison& cmp) {
  std::vector<std::string> off;
  for (const auto& b : cmp.boxes)
    if (!b.agree) off.push_back(std::to_string(b.sorts[0]) + std::to_string(b.sorts[1]) + std::to_string(b.sorts[2]));
  std::ostringstream out;
  out << to_string(cmp.mode) << ": " << cmp.predicted_total << " predicted blocks, " << cmp.computed_total
      << " computed atoms; ";
  if (cmp.exact)
    out << "exact match";
  else
    out << "boxes differing: " << join(off, " ")
        << (cmp.agree_outside_iji ? " (all of shape i,j,i)" : " (including shapes other than i,j,i)");
  return out.str();
}

}  // namespace

const Check& Report::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error("report has no check '" + id + "'");
}

nlohmann::json Report::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) list.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}, {"informational", c.informational}});
  return {{"n", n}, {"header", header}, {"checks", list}, {"atom_comparison", atom_comparison}, {"overall", overall}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "n = " << n << "\n" << header << "\n";
  for (const auto& c : checks)
    out << (c.informational ? "[INFO] " : c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.detail << "\n";
  out << "overall: " << (overall ? "PASS" : "FAIL") << "\n";
  return out.str();
}

TheoremInstance make_instance(unsigned n, const ConstructionOptions& options) {
  return {build_model(n, options), build_theory(n, options), build_sigma(n), options};
}

Report verify(const TheoremInstance& instance, const VerifyOptions& options) {
  const PaperModel& model = instance.model;
  const Structure& structure = model.structure;
  const unsigned n = model.n;
  const unsigned m = structure.universe_size();
  const CylindricSpace space(n, m);
  const Element a0 = model.labels.at("a0");

  Report report;
  report.n = n;
  report.header = kHeader;

  // 1. Th holds.
  {
    Evaluator ev(structure, space);
    std::vector<std::string> failing, notes;
    for (const auto& ax : instance.theory) {
      check_formula(structure, ax.formula, space);
      if (!ev.holds(ax.formula)) failing.push_back(ax.label);
      if (!ax.note.empty()) notes.push_back(ax.label + ": " + ax.note);
    }
    std::string detail = failing.empty()
                             ? "all " + std::to_string(instance.theory.size()) + " axioms hold"
                             : "failing: " + join(failing);
    if (structure.has_relation("S")) {
      Formula total = forall(0, exists(1, atom("S", {0, 1})));
      Formula connex = disj(disj(atom("S", {0, 1}), atom("S", {1, 0})), eq(0, 1));
      detail += std::string("; displayed readings without relativization: 'Ax Ey S(x,y)' ") +
                (ev.holds(total) ? "holds" : "fails") + ", 'S(x,y) | S(y,x) | x=y' " +
                (ev.holds(connex) ? "holds" : "fails");
    }
    if (!notes.empty()) detail += "; notes: " + join(notes, "; ");
    report.checks.push_back({"theory-holds", failing.empty(), detail});
  }

  // 2. Sigma(D) has exactly the solution {a0}.
  {
    auto solutions = enumerate_sigma_solutions(formulas_of(instance.sigma), "D", structure, space);
    NAryRelation expected(1, m);
    expected.set(a0);
    std::vector<std::string> shown;
    for (const auto& s : solutions) shown.push_back(model.describe(s));
    std::sort(shown.begin(), shown.end());
    bool pass = solutions.size() == 1 && solutions[0] == expected;
    report.checks.push_back({"unique-solution", pass,
                             std::to_string(solutions.size()) + " solution(s) among " +
                                 std::to_string(std::uint64_t{1} << m) + " unary candidates: " + join(shown, " ")});
  }

  // 3. {a0} x M^(n-1) is not definable.
  AlgebraClosure closure = close(structure, space);
  {
    NAryRelation d = space.lift(NAryRelation::unary(m, {a0}));
    bool definable = closure.is_union_of_atoms(d);
    report.checks.push_back({"not-definable", !definable,
                             std::to_string(closure.atom_count()) + " atoms after " +
                                 std::to_string(closure.refinement_passes()) + " refinement passes; {a0} x M^" +
                                 std::to_string(n - 1) + (definable ? " IS" : " is not") + " a union of atoms"});
  }

  // 4. Domain dichotomy against U_0 = first projection of R.
  const NAryRelation& r = structure.relation("R");
  std::vector<NAryRelation> derived_sorts;
  for (unsigned i = 0; i < n; ++i) derived_sorts.push_back(r.project(i));
  {
    const NAryRelation& u0 = derived_sorts[0];
    std::size_t violations = 0;
    for (const auto& p : closure.atom_projections(0))
      if (!u0.subset_of(p) && !u0.disjoint_from(p)) ++violations;
    report.checks.push_back({"domain-dichotomy", violations == 0,
                             "U_0 = " + model.describe(u0) + "; " + std::to_string(violations) + " of " +
                                 std::to_string(closure.atom_count()) +
                                 " atoms have a first projection meeting U_0 without containing it"});
  }

  // 5. Rigidity.
  {
    try {
      auto autos = automorphisms(structure, derived_sorts);
      std::size_t moving = 0;
      for (const auto& p : autos)
        if (p[a0] != a0) ++moving;
      report.checks.push_back({"rigidity", moving == 0,
                               "automorphism group of order " + std::to_string(autos.size()) +
                                   " (sort-preserving search over the projections of R); " +
                                   std::to_string(moving) + " move a0"});
    } catch (const Error& e) {
      report.checks.push_back({"rigidity", false, std::string("projections of R do not partition M: ") + e.what()});
    }
  }

  // 6. Predicted family, n = 3 only.
  if (n == 3 && structure.has_relation("S")) {
    auto as_written = compare_family(predicted_atoms(model, PredictionMode::AsWritten), closure, model,
                                     PredictionMode::AsWritten);
    auto refined = compare_family(predicted_atoms(model, PredictionMode::DiagonalRefined), closure, model,
                                  PredictionMode::DiagonalRefined);
    const FamilyComparison& selected = options.mode == PredictionMode::AsWritten ? as_written : refined;
    const FamilyComparison& other = options.mode == PredictionMode::AsWritten ? refined : as_written;
    report.atom_comparison = {{"selected_mode", to_string(options.mode)},
                              {"as_written", as_written.to_json()},
                              {"diagonal_refined", refined.to_json()}};
    report.checks.push_back({"predicted-family", as_written.agree_outside_iji && refined.exact,
                             summarize(selected) + " | " + summarize(other)});
  }

  // 7. Restrictedness, informational.
  {
    Signature sig = structure.signature();
    sig.add("D", 1);
    std::vector<std::string> substituted;
    std::size_t total = 0;
    for (const auto* list : {&instance.theory, &instance.sigma})
      for (const auto& ax : *list) {
        ++total;
        if (!is_restricted(ax.formula, sig)) substituted.push_back(ax.label);
      }
    report.checks.push_back(
        {"restrictedness", substituted.empty(),
         std::to_string(total - substituted.size()) + " of " + std::to_string(total) +
             " axioms are restricted as emitted" +
             (substituted.empty() ? std::string() : "; with substituted atoms: " + join(substituted)),
         true});
  }

  report.overall = true;
  for (std::size_t k = 0; k < 5; ++k) report.overall = report.overall && report.checks[k].pass;
  return report;
}

Report verify_theorem(unsigned n, const VerifyOptions& options) { return verify(make_instance(n), options); }

}  // namespace finvar
