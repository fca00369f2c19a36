#pragma once

// The hand-derived atom family for the n = 3 model, and its comparison with
// the atoms computed by close().
//
// Boxes U_i x U_j x U_k with i, j, k distinct split into the permuted copies
// of R and T - R. Every other box splits by a pair (e0, e1) of "binary
// blocks" for the coordinate pairs (0,1) and (1,2), where the blocks over
// U_i x U_j are {S, S^-1, id_0} for i = j = 0, {di_i, id_i} for i = j > 0 and
// the single product U_i x U_j otherwise.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finvar/closure.hpp"
#include "finvar/construction.hpp"

namespace finvar {

enum class PredictionMode {
  AsWritten,        // the family exactly as listed
  DiagonalRefined,  // also splits shapes (i,j,i), i != j, by the block of (v0, v2)
};

std::string to_string(PredictionMode mode);
PredictionMode prediction_mode_from_string(const std::string& text);

struct BinaryBlock {
  enum class Kind { Cycle, CycleInverse, Identity, Diversity, Product };
  Kind kind;
  unsigned from;
  unsigned to;

  std::string name() const;
  bool contains(const PaperModel& model, Element x, Element y) const;
  friend bool operator==(const BinaryBlock&, const BinaryBlock&) = default;
};

// Rel_ij.
std::vector<BinaryBlock> binary_partition(unsigned i, unsigned j);

struct AtomDescriptor {
  std::array<unsigned, 3> sorts;
  std::optional<bool> in_r;          // repetition-free sorts: r (true) or -r (false)
  std::optional<BinaryBlock> first;  // block of (v0, v1)
  std::optional<BinaryBlock> second; // block of (v1, v2)
  std::optional<BinaryBlock> outer;  // block of (v0, v2), diagonal-refined only
  NAryRelation cells{3, 1};

  std::string label() const;  // e.g. "X(012,r)", "X(000,<S,S>)", "X(101,<U_1xU_0,U_0xU_1>;id_1)"
};

// Throws DimensionError unless model.n == 3. Empty descriptors are kept.
std::vector<AtomDescriptor> predicted_atoms(const PaperModel& model, PredictionMode mode);

struct BoxComparison {
  std::array<unsigned, 3> sorts;
  bool iji_shape = false;  // i != j and k == i
  std::size_t predicted_blocks = 0;
  std::size_t computed_atoms = 0;
  std::size_t matched = 0;  // predicted blocks equal to a computed atom
  std::vector<std::string> unmatched;
  bool agree = false;
};

struct FamilyComparison {
  PredictionMode mode;
  std::size_t predicted_total = 0;
  std::size_t computed_total = 0;
  std::vector<std::string> empty_descriptors;
  std::size_t atoms_straddling_boxes = 0;
  std::vector<BoxComparison> boxes;  // lexicographic by sorts
  bool agree_outside_iji = false;
  bool exact = false;

  nlohmann::json to_json() const;
};

FamilyComparison compare_family(const std::vector<AtomDescriptor>& predicted, const AlgebraClosure& closure,
                                const PaperModel& model, PredictionMode mode);

}  // namespace finvar
