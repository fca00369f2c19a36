// Command-line front end: theorem verification, evaluation, closure and
// definability queries.
//
// Exit status: 0 success / definable, 1 failed verification / not definable,
// 2 usage or input errors.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "finvar/automorphism.hpp"
#include "finvar/closure.hpp"
#include "finvar/construction.hpp"
#include "finvar/error.hpp"
#include "finvar/evaluator.hpp"
#include "finvar/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

void print_tuple(const finvar::Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? " " : "") << t[i];
  std::cout << '\n';
}

finvar::NAryRelation load_query_relation(const std::string& path, const finvar::CylindricSpace& space) {
  finvar::NAryRelation r = finvar::load_relation(finvar::read_json_file(path), space.universe_size());
  if (r.arity() > space.dimension())
    throw finvar::DimensionError("relation arity " + std::to_string(r.arity()) + " exceeds n = " +
                                 std::to_string(space.dimension()));
  return space.lift(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finvar: n-variable definability over finite structures"};
  app.require_subcommand(1);

  unsigned n = 3;
  std::string structure_path, json_path, out_path, relation_path, formula_text, mode_text = "diagonal-refined";
  bool show_tuples = false, naive = false, full_search = false, no_s = false;

  auto* verify = app.add_subcommand("verify", "Replay the non-definability theorem for one n");
  verify->add_option("--n", n, "Number of variables (3..5)")->required();
  verify->add_option("--json", json_path, "Write the report as JSON");
  verify->add_option("--mode", mode_text, "Predicted atom family: as-written | diagonal-refined");
  verify->add_flag("--no-s", no_s, "Leave S out of the language (n >= 4)");

  auto* model = app.add_subcommand("model", "Write the constructed model as a structure document");
  model->add_option("--n", n, "Number of variables (>= 3)")->required();
  model->add_option("--out", out_path, "Output path")->required();
  model->add_flag("--no-s", no_s, "Leave S out of the language (n >= 4)");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula over a structure");
  eval->add_option("--structure", structure_path, "Structure document")->required();
  eval->add_option("--n", n, "Dimension")->required();
  eval->add_option("--formula", formula_text, "Formula text")->required();
  eval->add_flag("--tuples", show_tuples, "List the satisfying tuples");
  eval->add_flag("--naive", naive, "Use per-assignment evaluation");

  auto* closure_cmd = app.add_subcommand("closure", "Compute the atoms of the definable-relation algebra");
  closure_cmd->alias("atoms");
  closure_cmd->add_option("--structure", structure_path, "Structure document")->required();
  closure_cmd->add_option("--n", n, "Dimension")->required();
  closure_cmd->add_option("--out", out_path, "Atom report path")->required();

  auto* definable = app.add_subcommand("definable", "Decide whether a relation is n-variable definable");
  definable->add_option("--structure", structure_path, "Structure document")->required();
  definable->add_option("--n", n, "Dimension")->required();
  definable->add_option("--relation", relation_path, "Relation document {\"arity\", \"tuples\"}")->required();

  auto* autos = app.add_subcommand("automorphisms", "List automorphisms");
  auto* autos_structure = autos->add_option("--structure", structure_path, "Structure document");
  auto* autos_n = autos->add_option("--n", n, "Use the constructed model for this n");
  autos_structure->excludes(autos_n);
  autos->add_flag("--full", full_search, "Search all m! permutations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) {
      if (n < 3) {
        std::cerr << "error: the construction needs n >= 3\n";
        return kUsage;
      }
      if (n >= 6) {
        std::cerr << "error: n = " << n << " refused: the closure works on (2n+1)^n cells ("
                  << finvar::checked_cell_count(n, 2 * n + 1) << " here), beyond the validated range n <= 5\n";
        return kUsage;
      }
      finvar::ConstructionOptions construction{.include_s = !no_s};
      finvar::VerifyOptions options{finvar::prediction_mode_from_string(mode_text)};
      finvar::Report report = finvar::verify(finvar::make_instance(n, construction), options);
      std::cout << report.to_text();
      if (!json_path.empty()) finvar::write_json_file(json_path, report.to_json());
      return report.overall ? kOk : kNegative;
    }

    if (*model) {
      finvar::PaperModel pm = finvar::build_model(n, {.include_s = !no_s});
      finvar::write_json_file(out_path, finvar::save_structure(pm.structure));
      std::cout << "wrote model with " << pm.structure.universe_size() << " elements to " << out_path << '\n';
      return kOk;
    }

    if (*autos) {
      finvar::Structure s(1);
      std::vector<finvar::NAryRelation> sorts;
      if (!structure_path.empty()) {
        s = finvar::load_structure(finvar::read_json_file(structure_path));
        sorts = finvar::projection_sorts(s);
      } else if (*autos_n) {
        finvar::PaperModel pm = finvar::build_model(n);
        s = pm.structure;
        sorts = pm.carriers;
      } else {
        std::cerr << "error: automorphisms needs --structure or --n\n";
        return kUsage;
      }
      auto perms = full_search ? finvar::automorphisms_exhaustive(s) : finvar::automorphisms(s, sorts);
      std::cout << perms.size() << " automorphism(s)\n";
      for (const auto& p : perms) print_tuple(p);
      return kOk;
    }

    finvar::Structure s = finvar::load_structure(finvar::read_json_file(structure_path));
    finvar::CylindricSpace space(n, s.universe_size());

    if (*eval) {
      finvar::Formula f = finvar::parse(formula_text, s.signature());
      finvar::NAryRelation meaning = naive ? finvar::evaluate_naive(s, f, space) : finvar::evaluate(s, f, space);
      std::cout << meaning.count() << '\n';
      if (show_tuples)
        for (const auto& t : meaning.tuples()) print_tuple(t);
      return kOk;
    }

    if (*closure_cmd) {
      finvar::AlgebraClosure closure = finvar::close(s, space);
      finvar::write_json_file(out_path, finvar::atom_report(closure, s.signature()));
      std::cout << closure.atom_count() << " atoms written to " << out_path << '\n';
      return kOk;
    }

    if (*definable) {
      finvar::NAryRelation x = load_query_relation(relation_path, space);
      finvar::AlgebraClosure closure = finvar::close(s, space);
      finvar::Definability answer = finvar::is_definable(closure, x);
      if (!answer.definable) {
        std::cout << "not definable\n";
        return kNegative;
      }
      std::cout << "definable\nwitness: " << finvar::render(*answer.witness) << '\n';
      return kOk;
    }
  } catch (const finvar::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
