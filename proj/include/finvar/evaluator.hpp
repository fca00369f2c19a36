#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include "finvar/cylindric.hpp"
#include "finvar/formula.hpp"
#include "finvar/structure.hpp"

namespace finvar {

// Bottom-up evaluation of formulas to their meaning in M^n: atoms by
// reindexing, equality by diagonals, negation by complement, conjunction by
// intersection and E v_i by cylindrification along i. Results are memoized
// per formula node, so shared subformulas are evaluated once.
class Evaluator {
 public:
  Evaluator(Structure structure, CylindricSpace space);

  const NAryRelation& evaluate(const Formula& f);
  bool holds(const Formula& f) { return evaluate(f).is_full(); }

  // Reinterprets a relation symbol and drops cached meanings that depend on it.
  void rebind(const std::string& name, NAryRelation table);

  const Structure& structure() const { return structure_; }
  const CylindricSpace& space() const { return space_; }

 private:
  bool mentions(const Formula& f, const std::string& name);

  Structure structure_;
  CylindricSpace space_;
  struct Entry {
    Formula keep_alive;
    NAryRelation meaning;
  };
  std::unordered_map<const Formula::Node*, Entry> memo_;
};

// mn(f) in the given space. Throws SignatureError for unknown relations or
// arity mismatches and DimensionError when variable_span(f) exceeds n.
NAryRelation evaluate(const Structure& structure, const Formula& f, const CylindricSpace& space);

// Same meaning computed by checking satisfaction separately for each of the
// m^n assignments. Independent of the cylindric operations above.
NAryRelation evaluate_naive(const Structure& structure, const Formula& f, const CylindricSpace& space);

// True iff the universal closure of f holds, i.e. mn(f) is all of M^n.
bool sentence_holds(const Structure& structure, const Formula& f, const CylindricSpace& space);

// Throws unless f only uses symbols of the structure with the right arities
// and at most the space's variables.
void check_formula(const Structure& structure, const Formula& f, const CylindricSpace& space);

}  // namespace finvar
