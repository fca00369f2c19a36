#pragma once

// Formulas of the n-variable fragment: atoms, equality, negation,
// conjunction and existential quantification over variables v0..v(n-1).
// Disjunction, implication, biconditional and the universal quantifier are
// sugar that is rewritten into these five primitives when built or parsed.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace finvar {

using VarIndex = std::uint32_t;

// Relation names with their arities. Names are unique and arities >= 1.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, unsigned>> entries);

  void add(const std::string& name, unsigned arity);
  std::optional<unsigned> arity(std::string_view name) const;
  bool contains(std::string_view name) const { return arity(name).has_value(); }
  const std::map<std::string, unsigned, std::less<>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, unsigned, std::less<>> entries_;
};

enum class FormulaKind { Atom, Eq, Not, And, Exists };

// Immutable formula handle. Subformulas are shared, so a formula is a DAG;
// identity() gives a stable key for memoizing per-node results.
class Formula {
 public:
  struct Node {
    FormulaKind kind;
    std::string relation;          // Atom only
    std::vector<VarIndex> vars;    // Atom: arguments; Eq: {left, right}; Exists: {bound}
    std::vector<Formula> children; // Not, Exists: {body}; And: {lhs, rhs}
  };

  FormulaKind kind() const { return node_->kind; }
  const std::string& relation() const { return node_->relation; }
  std::span<const VarIndex> args() const { return node_->vars; }
  VarIndex left() const { return node_->vars[0]; }
  VarIndex right() const { return node_->vars[1]; }
  VarIndex bound() const { return node_->vars[0]; }
  const Formula& body() const { return node_->children[0]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }

  const Node* identity() const { return node_.get(); }

  // Structural equality.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend Formula make_formula(Node node);
};

Formula atom(std::string relation, std::vector<VarIndex> args);
Formula eq(VarIndex left, VarIndex right);
Formula negate(Formula body);
Formula conj(Formula lhs, Formula rhs);
Formula exists(VarIndex bound, Formula body);

// Sugar, expanded into primitives.
Formula disj(Formula lhs, Formula rhs);         // ~(~p & ~q)
Formula implies(Formula lhs, Formula rhs);      // ~(p & ~q)
Formula iff(Formula lhs, Formula rhs);          // (p -> q) & (q -> p)
Formula forall(VarIndex bound, Formula body);   // ~E v ~p
Formula neq(VarIndex left, VarIndex right);     // ~v = w
Formula verum();                                // v0 = v0
Formula falsum();                               // ~v0 = v0

// Flat conjunction/disjunction (one negation around the conjunction of
// negated parts). Empty input yields verum/falsum.
Formula conj_all(std::span<const Formula> parts);
Formula disj_all(std::span<const Formula> parts);
// Existential closure over the listed variables, innermost last.
Formula exists_all(std::span<const VarIndex> bound, Formula body);

Formula parse(std::string_view text, const Signature& signature);
std::string render(const Formula& f);

// 1 + the largest variable index occurring free or bound.
unsigned variable_span(const Formula& f);

// True iff every relational atom has arguments exactly v0, v1, ..., v(k-1).
bool is_restricted(const Formula& f, const Signature& signature);

std::set<std::string> relations_used(const Formula& f);

// Number of nodes in the tree expansion, saturating at limit.
std::uint64_t tree_size(const Formula& f, std::uint64_t limit = UINT64_MAX);

}  // namespace finvar
