#include "finvar/predicted.hpp"

#include <map>

#include "finvar/error.hpp"

namespace finvar {

namespace {

std::vector<int> sort_table(const PaperModel& model) {
  std::vector<int> sort_of(model.structure.universe_size(), -1);
  for (std::size_t s = 0; s < model.carriers.size(); ++s)
    model.carriers[s].for_each_cell([&](std::uint64_t e) { sort_of[e] = static_cast<int>(s); });
  return sort_of;
}

std::string sorts_text(const std::array<unsigned, 3>& s) {
  return std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]);
}

}  // namespace

std::string to_string(PredictionMode mode) {
  return mode == PredictionMode::AsWritten ? "as-written" : "diagonal-refined";
}

PredictionMode prediction_mode_from_string(const std::string& text) {
  if (text == "as-written") return PredictionMode::AsWritten;
  if (text == "diagonal-refined") return PredictionMode::DiagonalRefined;
  throw Error("unknown prediction mode '" + text + "'");
}

std::string BinaryBlock::name() const {
  switch (kind) {
    case Kind::Cycle: return "S";
    case Kind::CycleInverse: return "S^-1";
    case Kind::Identity: return "id_" + std::to_string(from);
    case Kind::Diversity: return "di_" + std::to_string(from);
    case Kind::Product: return "U_" + std::to_string(from) + "xU_" + std::to_string(to);
  }
  return "?";
}

bool BinaryBlock::contains(const PaperModel& model, Element x, Element y) const {
  if (!model.carriers[from].test(x) || !model.carriers[to].test(y)) return false;
  switch (kind) {
    case Kind::Cycle: return model.structure.relation("S").contains({x, y});
    case Kind::CycleInverse: return model.structure.relation("S").contains({y, x});
    case Kind::Identity: return x == y;
    case Kind::Diversity: return x != y;
    case Kind::Product: return true;
  }
  return false;
}

std::vector<BinaryBlock> binary_partition(unsigned i, unsigned j) {
  using K = BinaryBlock::Kind;
  if (i != j) return {{K::Product, i, j}};
  if (i == 0) return {{K::Cycle, 0, 0}, {K::CycleInverse, 0, 0}, {K::Identity, 0, 0}};
  return {{K::Diversity, i, i}, {K::Identity, i, i}};
}

std::string AtomDescriptor::label() const {
  std::string out = "X(" + sorts_text(sorts) + ",";
  if (in_r) {
    out += *in_r ? "r" : "-r";
  } else {
    out += "<" + first->name() + "," + second->name() + ">";
    if (outer) out += ";" + outer->name();
  }
  return out + ")";
}

std::vector<AtomDescriptor> predicted_atoms(const PaperModel& model, PredictionMode mode) {
  if (model.n != 3) throw DimensionError("the predicted atom family is only available for n = 3");
  if (!model.structure.has_relation("S")) throw SignatureError("the predicted atom family needs S");
  const unsigned m = model.structure.universe_size();
  const NAryRelation& r = model.structure.relation("R");

  std::vector<AtomDescriptor> out;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) {
        std::array<unsigned, 3> sorts{i, j, k};
        auto box_cells = [&](auto&& keep) {
          NAryRelation cells(3, m);
          model.carriers[i].for_each_cell([&](std::uint64_t a) {
            model.carriers[j].for_each_cell([&](std::uint64_t b) {
              model.carriers[k].for_each_cell([&](std::uint64_t c) {
                Tuple t{static_cast<Element>(a), static_cast<Element>(b), static_cast<Element>(c)};
                if (keep(t)) cells.insert(t);
              });
            });
          });
          return cells;
        };

        if (i != j && j != k && i != k) {
          for (bool sign : {true, false}) {
            AtomDescriptor d;
            d.sorts = sorts;
            d.in_r = sign;
            // Position p holds an element of sort sorts[p]; read R with sorts in order 0, 1, 2.
            d.cells = box_cells([&](const Tuple& t) {
              Tuple u(3);
              for (unsigned p = 0; p < 3; ++p) u[sorts[p]] = t[p];
              return r.contains(u) == sign;
            });
            out.push_back(std::move(d));
          }
          continue;
        }

        const bool refine = mode == PredictionMode::DiagonalRefined && i == k && i != j;
        for (const BinaryBlock& e0 : binary_partition(i, j))
          for (const BinaryBlock& e1 : binary_partition(j, k)) {
            std::vector<std::optional<BinaryBlock>> outers{std::nullopt};
            if (refine) {
              outers.clear();
              for (const BinaryBlock& e02 : binary_partition(i, k)) outers.push_back(e02);
            }
            for (const auto& e02 : outers) {
              AtomDescriptor d;
              d.sorts = sorts;
              d.first = e0;
              d.second = e1;
              d.outer = e02;
              d.cells = box_cells([&](const Tuple& t) {
                return e0.contains(model, t[0], t[1]) && e1.contains(model, t[1], t[2]) &&
                       (!e02 || e02->contains(model, t[0], t[2]));
              });
              out.push_back(std::move(d));
            }
          }
      }
  return out;
}

nlohmann::json FamilyComparison::to_json() const {
  nlohmann::json boxes_json = nlohmann::json::array();
  for (const auto& b : boxes) {
    boxes_json.push_back({{"sorts", sorts_text(b.sorts)},
                          {"iji_shape", b.iji_shape},
                          {"predicted_blocks", b.predicted_blocks},
                          {"computed_atoms", b.computed_atoms},
                          {"matched", b.matched},
                          {"unmatched_predicted", b.unmatched},
                          {"agree", b.agree}});
  }
  return {{"mode", to_string(mode)},
          {"predicted_total", predicted_total},
          {"computed_total", computed_total},
          {"empty_descriptors", empty_descriptors},
          {"atoms_straddling_boxes", atoms_straddling_boxes},
          {"agree_outside_iji", agree_outside_iji},
          {"exact", exact},
          {"boxes", boxes_json}};
}

FamilyComparison compare_family(const std::vector<AtomDescriptor>& predicted, const AlgebraClosure& closure,
                                const PaperModel& model, PredictionMode mode) {
  const auto& space = closure.space();
  if (space.dimension() != 3 || space.universe_size() != model.structure.universe_size())
    throw DimensionError("family comparison needs the closure of the n = 3 model");
  const std::vector<int> sort_of = sort_table(model);
  const unsigned m = space.universe_size();
  auto box_of = [&](std::uint64_t cell) {
    return std::array<unsigned, 3>{static_cast<unsigned>(sort_of[cell / (m * m)]),
                                   static_cast<unsigned>(sort_of[(cell / m) % m]),
                                   static_cast<unsigned>(sort_of[cell % m])};
  };

  FamilyComparison cmp;
  cmp.mode = mode;
  cmp.predicted_total = predicted.size();
  cmp.computed_total = closure.atom_count();

  std::map<std::array<unsigned, 3>, BoxComparison> boxes;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      for (unsigned k = 0; k < 3; ++k) {
        BoxComparison& b = boxes[{i, j, k}];
        b.sorts = {i, j, k};
        b.iji_shape = i == k && i != j;
      }

  std::vector<bool> straddles(closure.atom_count(), false);
  for (std::uint64_t c = 0; c < space.cell_count(); ++c) {
    const auto& a = closure.atoms()[closure.atom_of(c)];
    if (box_of(c) != box_of(a.first_cell)) straddles[a.id] = true;
  }
  for (const auto& a : closure.atoms()) {
    if (straddles[a.id]) ++cmp.atoms_straddling_boxes;
    ++boxes[box_of(a.first_cell)].computed_atoms;
  }

  for (const auto& d : predicted) {
    BoxComparison& b = boxes[d.sorts];
    ++b.predicted_blocks;
    if (d.cells.empty()) {
      cmp.empty_descriptors.push_back(d.label());
      b.unmatched.push_back(d.label() + " (empty)");
      continue;
    }
    std::uint64_t first = 0;
    bool found = false, single = true;
    d.cells.for_each_cell([&](std::uint64_t c) {
      if (!found) {
        first = closure.atom_of(c);
        found = true;
      } else if (closure.atom_of(c) != first) {
        single = false;
      }
    });
    if (single && closure.atoms()[first].size == d.cells.count())
      ++b.matched;
    else
      b.unmatched.push_back(d.label());
  }

  cmp.agree_outside_iji = cmp.atoms_straddling_boxes == 0;
  cmp.exact = cmp.atoms_straddling_boxes == 0;
  for (auto& [key, b] : boxes) {
    b.agree = b.unmatched.empty() && b.matched == b.computed_atoms;
    if (!b.agree) {
      cmp.exact = false;
      if (!b.iji_shape) cmp.agree_outside_iji = false;
    }
    cmp.boxes.push_back(b);
  }
  return cmp;
}

}  // namespace finvar
