#include "finvar/evaluator.hpp"

#include <unordered_set>

#include "finvar/error.hpp"

namespace finvar {

void check_formula(const Structure& structure, const Formula& f, const CylindricSpace& space) {
  if (structure.universe_size() != space.universe_size())
    throw DimensionError("structure universe does not match the space");
  unsigned span = variable_span(f);
  if (span > space.dimension())
    throw DimensionError("formula uses " + std::to_string(span) + " variables but the space has dimension " +
                         std::to_string(space.dimension()));
  std::unordered_set<const Formula::Node*> seen;
  auto go = [&](auto& self, const Formula& g) -> void {
    if (!seen.insert(g.identity()).second) return;
    if (g.kind() == FormulaKind::Atom) {
      auto arity = structure.signature().arity(g.relation());
      if (!arity) throw SignatureError("unknown relation '" + g.relation() + "'");
      if (*arity != g.args().size())
        throw SignatureError("relation '" + g.relation() + "' has arity " + std::to_string(*arity) + ", used with " +
                             std::to_string(g.args().size()) + " arguments");
    }
    for (const Formula& c : g.identity()->children) self(self, c);
  };
  go(go, f);
}

Evaluator::Evaluator(Structure structure, CylindricSpace space)
    : structure_(std::move(structure)), space_(std::move(space)) {
  if (structure_.universe_size() != space_.universe_size())
    throw DimensionError("structure universe does not match the space");
}

const NAryRelation& Evaluator::evaluate(const Formula& f) {
  if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second.meaning;
  NAryRelation meaning = [&] {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        for (VarIndex v : f.args())
          if (v >= space_.dimension())
            throw DimensionError("variable v" + std::to_string(v) + " exceeds dimension " +
                                 std::to_string(space_.dimension()));
        const NAryRelation& table = structure_.relation(f.relation());
        if (table.arity() != f.args().size())
          throw SignatureError("relation '" + f.relation() + "' has arity " + std::to_string(table.arity()) +
                               ", used with " + std::to_string(f.args().size()) + " arguments");
        return space_.reindex(table, f.args());
      }
      case FormulaKind::Eq:
        return space_.diagonal(f.left(), f.right());
      case FormulaKind::Not:
        return space_.complement(evaluate(f.body()));
      case FormulaKind::And: {
        NAryRelation lhs = evaluate(f.lhs());
        return space_.intersect(lhs, evaluate(f.rhs()));
      }
      case FormulaKind::Exists:
        return space_.cylindrify(f.bound(), evaluate(f.body()));
    }
    throw Error("unreachable formula kind");
  }();
  auto [it, inserted] = memo_.emplace(f.identity(), Entry{f, std::move(meaning)});
  return it->second.meaning;
}

bool Evaluator::mentions(const Formula& f, const std::string& name) {
  std::unordered_map<const Formula::Node*, bool> seen;
  auto go = [&](auto& self, const Formula& g) -> bool {
    if (auto it = seen.find(g.identity()); it != seen.end()) return it->second;
    bool hit = g.kind() == FormulaKind::Atom && g.relation() == name;
    for (const Formula& c : g.identity()->children) hit = self(self, c) || hit;
    seen.emplace(g.identity(), hit);
    return hit;
  };
  return go(go, f);
}

void Evaluator::rebind(const std::string& name, NAryRelation table) {
  structure_.set_relation(name, std::move(table));
  for (auto it = memo_.begin(); it != memo_.end();) {
    if (mentions(it->second.keep_alive, name))
      it = memo_.erase(it);
    else
      ++it;
  }
}

NAryRelation evaluate(const Structure& structure, const Formula& f, const CylindricSpace& space) {
  check_formula(structure, f, space);
  Evaluator ev(structure, space);
  return ev.evaluate(f);
}

namespace {

class NaiveSatisfaction {
 public:
  NaiveSatisfaction(const Structure& s, unsigned n) : structure_(s), assignment_(n, 0) {}

  std::vector<Element>& assignment() { return assignment_; }

  bool satisfies(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        const NAryRelation& table = structure_.relation(f.relation());
        Tuple t;
        t.reserve(f.args().size());
        for (VarIndex v : f.args()) t.push_back(assignment_[v]);
        return table.contains(t);
      }
      case FormulaKind::Eq:
        return assignment_[f.left()] == assignment_[f.right()];
      case FormulaKind::Not:
        return !satisfies(f.body());
      case FormulaKind::And:
        return satisfies(f.lhs()) && satisfies(f.rhs());
      case FormulaKind::Exists: {
        Element saved = assignment_[f.bound()];
        bool found = false;
        for (Element e = 0; e < structure_.universe_size() && !found; ++e) {
          assignment_[f.bound()] = e;
          found = satisfies(f.body());
        }
        assignment_[f.bound()] = saved;
        return found;
      }
    }
    return false;
  }

 private:
  const Structure& structure_;
  std::vector<Element> assignment_;
};

}  // namespace

NAryRelation evaluate_naive(const Structure& structure, const Formula& f, const CylindricSpace& space) {
  check_formula(structure, f, space);
  NAryRelation out = space.empty();
  NaiveSatisfaction sat(structure, space.dimension());
  for (std::uint64_t cell = 0; cell < space.cell_count(); ++cell) {
    Tuple t = out.tuple_of(cell);
    std::copy(t.begin(), t.end(), sat.assignment().begin());
    if (sat.satisfies(f)) out.set(cell);
  }
  return out;
}

bool sentence_holds(const Structure& structure, const Formula& f, const CylindricSpace& space) {
  return evaluate(structure, f, space).is_full();
}

}  // namespace finvar
