#include "finvar/construction.hpp"

#include <algorithm>
#include <numeric>

#include "finvar/error.hpp"

namespace finvar {

namespace {

void require_dimension(unsigned n) {
  if (n < 3) throw DimensionError("the construction needs n >= 3, got " + std::to_string(n));
}

Element first_of_sort(unsigned sort) { return sort == 0 ? 0 : 2 * sort + 1; }

std::string element_name(unsigned sort, unsigned index) {
  if (sort == 0) return "a" + std::to_string(index);
  if (sort == 1) return "b" + std::to_string(index);
  if (sort == 2) return "c" + std::to_string(index);
  return "u" + std::to_string(sort) + "_" + std::to_string(index);
}

Formula s_atom(VarIndex x, VarIndex y) { return atom("S", {x, y}); }
Formula d_atom(VarIndex x) { return atom("D", {x}); }

Formula pairwise_distinct(std::span<const VarIndex> vars) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) parts.push_back(neq(vars[i], vars[j]));
  return conj_all(parts);
}

// E v0..v(k-1) (pairwise distinct & U_sort(v0) & ... & U_sort(v(k-1)))
Formula many_in_sort(unsigned n, unsigned sort, unsigned k) {
  std::vector<VarIndex> vars(k);
  std::iota(vars.begin(), vars.end(), VarIndex{0});
  std::vector<Formula> parts{pairwise_distinct(vars)};
  for (VarIndex v : vars) parts.push_back(sort_formula(n, sort, v));
  return exists_all(vars, conj_all(parts));
}

}  // namespace

std::string PaperModel::label_of(Element e) const {
  for (const auto& [name, element] : labels)
    if (element == e) return name;
  return std::to_string(e);
}

std::string PaperModel::describe(const NAryRelation& unary) const {
  std::vector<std::string> names;
  for (Element e = 0; e < unary.universe_size(); ++e)
    if (unary.test(e)) names.push_back(label_of(e));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t k = 0; k < names.size(); ++k) out += (k ? ", " : "") + names[k];
  return out + "}";
}

PaperModel build_model(unsigned n, const ConstructionOptions& options) {
  require_dimension(n);
  if (!options.include_s && n < 4) throw DimensionError("S can only be dropped for n >= 4");
  const unsigned m = 2 * n + 1;

  PaperModel model;
  model.n = n;
  model.structure = Structure(m);
  for (unsigned sort = 0; sort < n; ++sort) {
    NAryRelation carrier(1, m);
    unsigned size = sort == 0 ? 3 : 2;
    for (unsigned k = 0; k < size; ++k) {
      Element e = first_of_sort(sort) + k;
      carrier.set(e);
      model.labels[element_name(sort, k)] = e;
    }
    model.carriers.push_back(std::move(carrier));
  }

  // R: a0 goes with an even number of second elements, a1 and a2 with an odd number.
  NAryRelation hull(n, m);
  NAryRelation r(n, m);
  Tuple t(n);
  std::vector<unsigned> idx(n, 0);
  while (true) {
    t[0] = idx[0];
    unsigned parity = 0;
    for (unsigned s = 1; s < n; ++s) {
      t[s] = first_of_sort(s) + idx[s];
      parity += idx[s];
    }
    hull.insert(t);
    bool even = parity % 2 == 0;
    if ((idx[0] == 0) == even) r.insert(t);
    unsigned k = n;
    while (k > 0) {
      unsigned limit = k - 1 == 0 ? 3 : 2;
      if (++idx[k - 1] < limit) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  model.hull = std::move(hull);
  model.structure.add_relation("R", std::move(r));
  if (options.include_s) model.structure.add_relation("S", NAryRelation::from_tuples(2, m, {{0, 1}, {1, 2}, {2, 0}}));
  return model;
}

PaperModel relabel(const PaperModel& model, const Permutation& perm) {
  PaperModel out;
  out.n = model.n;
  out.structure = model.structure.permuted(perm);
  for (const auto& [name, e] : model.labels) out.labels[name] = perm[e];
  auto move_table = [&](const NAryRelation& table) {
    NAryRelation image(table.arity(), table.universe_size());
    table.for_each_cell([&](std::uint64_t cell) {
      Tuple t = table.tuple_of(cell);
      for (auto& e : t) e = perm[e];
      image.insert(t);
    });
    return image;
  };
  for (const auto& c : model.carriers) out.carriers.push_back(move_table(c));
  out.hull = move_table(model.hull);
  return out;
}

Signature theory_signature(unsigned n, const ConstructionOptions& options) {
  Signature sig;
  sig.add("R", n);
  if (options.include_s) sig.add("S", 2);
  return sig;
}

Signature sigma_signature(unsigned n, const ConstructionOptions& options) {
  Signature sig = theory_signature(n, options);
  sig.add("D", 1);
  return sig;
}

Formula r_atom(unsigned n) {
  std::vector<VarIndex> args(n);
  std::iota(args.begin(), args.end(), VarIndex{0});
  return atom("R", std::move(args));
}

Formula sort_formula(unsigned n, unsigned sort, VarIndex var) {
  if (sort >= n || var >= n) throw DimensionError("sort or variable out of range");
  if (var != sort) return exists(sort, conj(eq(var, sort), sort_formula(n, sort, sort)));
  std::vector<VarIndex> others;
  for (VarIndex v = 0; v < n; ++v)
    if (v != sort) others.push_back(v);
  return exists_all(others, r_atom(n));
}

Formula hull_formula(unsigned n) {
  std::vector<Formula> parts;
  for (unsigned i = 0; i < n; ++i) parts.push_back(sort_formula(n, i, i));
  return conj_all(parts);
}

Formula big_r(unsigned n) {
  Formula r = r_atom(n);
  Formula cut = conj(hull_formula(n), negate(r));
  std::vector<Formula> parts;
  for (VarIndex i = 0; i < n; ++i) parts.push_back(iff(exists(i, r), exists(i, cut)));
  return conj_all(parts);
}

Formula at_least_two(unsigned n, unsigned sort) { return many_in_sort(n, sort, 2); }

Formula at_most_two(unsigned n, unsigned sort) { return negate(many_in_sort(n, sort, 3)); }

std::vector<Axiom> build_theory(unsigned n, const ConstructionOptions& options) {
  require_dimension(n);
  if (!options.include_s && n < 4) throw DimensionError("S can only be dropped for n >= 4");
  std::vector<Axiom> th;

  if (options.include_s) {
    Formula u0x = sort_formula(n, 0, 0);
    Formula u0y = sort_formula(n, 0, 1);
    th.push_back({"S total on U_0", forall(0, implies(u0x, exists(1, s_atom(0, 1)))),
                  "displayed as 'Ax Ey S(x,y)', which fails outside U_0; relativized to U_0(x)"});
    th.push_back({"S functional", implies(conj(s_atom(0, 1), s_atom(0, 2)), eq(1, 2)), ""});
    th.push_back({"S inside U_0 without fixed point",
                  implies(s_atom(0, 1), conj(conj(u0x, u0y), neq(0, 1))), ""});
    th.push_back({"S is a 3-cycle", iff(s_atom(0, 1), exists(2, conj(s_atom(1, 2), s_atom(2, 0)))), ""});
    th.push_back({"S connects U_0",
                  implies(conj(u0x, u0y), disj(disj(s_atom(0, 1), s_atom(1, 0)), eq(0, 1))),
                  "displayed as 'S(x,y) | S(y,x) | x=y', which fails outside U_0; relativized to U_0(x) & U_0(y)"});
  } else {
    th.push_back({"|U_0|=3", conj(many_in_sort(n, 0, 3), negate(many_in_sort(n, 0, 4))),
                  "stated with four variables instead of the 3-cycle S"});
  }

  for (unsigned i = 1; i < n; ++i)
    th.push_back({"|U_" + std::to_string(i) + "|=2", conj(at_least_two(n, i), at_most_two(n, i)),
                  "'|U_i|<=2' is displayed with the conjunct x!=y twice; emitted with x!=y, x!=z, y!=z"});

  std::vector<Formula> cover;
  for (unsigned i = 0; i < n; ++i) cover.push_back(sort_formula(n, i, 0));
  th.push_back({"partition: sorts cover M", forall(0, disj_all(cover)), ""});
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (i != j)
        th.push_back({"partition: U_" + std::to_string(i) + " and U_" + std::to_string(j) + " disjoint",
                      forall(0, implies(sort_formula(n, i, 0), negate(sort_formula(n, j, 0)))), ""});

  th.push_back({"big(R)", big_r(n), ""});
  return th;
}

std::vector<Axiom> build_sigma(unsigned n) {
  require_dimension(n);
  Formula t = hull_formula(n);
  Formula r = r_atom(n);
  Formula not_d = negate(d_atom(0));
  Formula t_not_d = conj(t, not_d);
  // D(v1) by Tarski substitution.
  Formula d_at_1 = exists(0, conj(eq(0, 1), d_atom(0)));

  std::vector<Axiom> sigma;
  sigma.push_back({"outside D, R is constant along v0 (positive)",
                   implies(conj(t_not_d, r), forall(0, implies(t_not_d, r))), ""});
  sigma.push_back({"outside D, R is constant along v0 (negative)",
                   implies(conj(t_not_d, negate(r)), forall(0, implies(t_not_d, negate(r)))), ""});
  sigma.push_back({"D inside U_0", implies(d_atom(0), sort_formula(n, 0, 0)), ""});
  sigma.push_back({"|D|=1",
                   conj(exists(0, d_atom(0)), forall(0, forall(1, implies(conj(d_atom(0), d_at_1), eq(0, 1))))),
                   ""});
  return sigma;
}

}  // namespace finvar
