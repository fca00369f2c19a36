#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "finvar/cylindric.hpp"
#include "finvar/formula.hpp"
#include "finvar/structure.hpp"

namespace finvar {

struct ClosureGenerator {
  std::string name;
  Formula formula;
  NAryRelation meaning;
};

struct ClosureAtom {
  std::uint32_t id;
  std::uint64_t size;
  std::uint64_t first_cell;
  Formula witness;  // evaluates exactly to the atom
};

struct ClosureOptions {
  // When set, generators and the coordinate work queue are processed in an
  // order drawn from this seed. The resulting partition does not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

// Atom partition of the algebra of n-ary relations generated from all atomic
// formula meanings by complement, intersection and the cylindrifications.
// Atom ids are numbered by their smallest cell, so two closures with the same
// partition have identical atom_of tables.
class AlgebraClosure {
 public:
  const CylindricSpace& space() const { return space_; }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<ClosureAtom>& atoms() const { return atoms_; }
  std::uint32_t atom_of(std::uint64_t cell) const { return atom_of_[cell]; }
  std::span<const std::uint32_t> atom_table() const { return atom_of_; }
  // Nonempty atomic-formula meanings the closure was seeded with.
  const std::vector<ClosureGenerator>& generators() const { return generators_; }
  // Number of coordinate refinement passes run before the partition was stable.
  std::size_t refinement_passes() const { return passes_; }

  NAryRelation atom_relation(std::uint32_t id) const;
  // Coarser partitions passed through on the way: the partition by atomic
  // formulas, then one entry per refinement pass that split something. The
  // last level is the atom partition itself.
  struct Level {
    std::vector<std::uint32_t> block_of;
    std::vector<Formula> witness;
    std::vector<std::uint64_t> witness_size;
  };
  const std::vector<Level>& levels() const { return levels_; }
  bool is_union_of_atoms(const NAryRelation& x) const;
  // Coordinate projection of every atom, indexed by atom id.
  std::vector<NAryRelation> atom_projections(unsigned coordinate) const;

 private:
  explicit AlgebraClosure(CylindricSpace space) : space_(std::move(space)) {}

  CylindricSpace space_;
  std::vector<std::uint32_t> atom_of_;
  std::vector<ClosureAtom> atoms_;
  std::vector<ClosureGenerator> generators_;
  std::vector<Level> levels_;
  std::size_t passes_ = 0;

  friend AlgebraClosure close(const Structure&, const CylindricSpace&, const ClosureOptions&);
};

AlgebraClosure close(const Structure& structure, const CylindricSpace& space, const ClosureOptions& options = {});

struct Definability {
  bool definable = false;
  std::optional<Formula> witness;
};

// X is definable iff it is a union of atoms. The witness is a disjunction of
// block witnesses (or the negation of one for the complement, if smaller)
// taken from the coarsest level at which X is already a union of blocks.
Definability is_definable(const AlgebraClosure& closure, const NAryRelation& x);

// All V subset of M such that V x M^(n-1) is definable, ascending by bit table.
std::vector<NAryRelation> definable_unary_relations(const AlgebraClosure& closure);

// {"n", "universe_size", "atom_count", "atoms": [{"id", "size", "witness", "restricted", "tuples"}]}
nlohmann::json atom_report(const AlgebraClosure& closure, const Signature& signature);

}  // namespace finvar
