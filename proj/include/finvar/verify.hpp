#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "finvar/construction.hpp"
#include "finvar/predicted.hpp"

namespace finvar {

struct Check {
  std::string id;
  bool pass = false;
  std::string detail;
  bool informational = false;  // reported, never counted in overall
};

struct Report {
  unsigned n = 0;
  std::string header;
  std::vector<Check> checks;
  nlohmann::json atom_comparison = nlohmann::json::object();
  bool overall = false;  // the first five checks

  const Check& check(const std::string& id) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Model, theory and implicit definition to verify. Tests mutate these.
struct TheoremInstance {
  PaperModel model;
  std::vector<Axiom> theory;
  std::vector<Axiom> sigma;
  ConstructionOptions options;
};

TheoremInstance make_instance(unsigned n, const ConstructionOptions& options = {});

struct VerifyOptions {
  PredictionMode mode = PredictionMode::DiagonalRefined;
};

// Runs, in order:
//   theory-holds       every Th axiom holds in the model
//   unique-solution    Sigma(D) has exactly the solution {a0} among all 2^m
//   not-definable      {a0} x M^(n-1) is not a union of closure atoms
//   domain-dichotomy   every atom's first projection contains U_0 or misses it
//   rigidity           every automorphism fixes a0
//   predicted-family       (n = 3) computed atoms vs the predicted family
//   restrictedness     which Th and Sigma axioms avoid substituted atoms
// overall is the conjunction of the first five.
Report verify(const TheoremInstance& instance, const VerifyOptions& options = {});
Report verify_theorem(unsigned n, const VerifyOptions& options = {});

}  // namespace finvar
