#include "finvar/structure.hpp"

#include <fstream>

#include "finvar/error.hpp"

namespace finvar {

void Structure::add_relation(const std::string& name, NAryRelation table) {
  if (table.universe_size() != universe_size_)
    throw DimensionError("relation '" + name + "' has universe size " + std::to_string(table.universe_size()) +
                         ", structure has " + std::to_string(universe_size_));
  signature_.add(name, table.arity());
  interpretation_.emplace(name, std::move(table));
}

void Structure::set_relation(const std::string& name, NAryRelation table) {
  auto it = interpretation_.find(name);
  if (it == interpretation_.end()) throw SignatureError("unknown relation '" + name + "'");
  if (table.arity() != it->second.arity() || table.universe_size() != universe_size_)
    throw DimensionError("replacement table for '" + name + "' has the wrong shape");
  it->second = std::move(table);
}

const NAryRelation& Structure::relation(std::string_view name) const {
  auto it = interpretation_.find(name);
  if (it == interpretation_.end()) throw SignatureError("unknown relation '" + std::string(name) + "'");
  return it->second;
}

Structure Structure::permuted(std::span<const Element> perm) const {
  if (perm.size() != universe_size_) throw DimensionError("permutation length does not match universe size");
  Structure out(universe_size_);
  for (const auto& [name, table] : interpretation_) {
    NAryRelation image(table.arity(), universe_size_);
    table.for_each_cell([&](std::uint64_t cell) {
      Tuple t = table.tuple_of(cell);
      for (auto& e : t) e = perm[e];
      image.insert(t);
    });
    out.add_relation(name, std::move(image));
  }
  return out;
}

nlohmann::json save_relation(const NAryRelation& r) {
  return {{"arity", r.arity()}, {"tuples", r.tuples()}};
}

NAryRelation load_relation(const nlohmann::json& doc, unsigned universe_size) {
  if (!doc.is_object() || !doc.contains("arity") || !doc.contains("tuples"))
    throw SchemaError("relation must be an object with \"arity\" and \"tuples\"");
  if (!doc["arity"].is_number_integer() || doc["arity"].get<long long>() <= 0)
    throw SchemaError("relation arity must be a positive integer");
  if (!doc["tuples"].is_array()) throw SchemaError("\"tuples\" must be an array");
  unsigned arity = doc["arity"].get<unsigned>();
  NAryRelation r(arity, universe_size);
  for (const auto& t : doc["tuples"]) {
    if (!t.is_array() || t.size() != arity)
      throw SchemaError("tuple " + t.dump() + " does not have length " + std::to_string(arity));
    Tuple tuple;
    for (const auto& e : t) {
      if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() >= universe_size)
        throw SchemaError("tuple entry " + e.dump() + " outside universe of size " + std::to_string(universe_size));
      tuple.push_back(e.get<Element>());
    }
    r.insert(tuple);
  }
  return r;
}

nlohmann::json save_structure(const Structure& s) {
  nlohmann::json sig = nlohmann::json::object();
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [name, arity] : s.signature().entries()) sig[name] = arity;
  for (const auto& [name, table] : s.relations()) rels[name] = save_relation(table);
  return {{"universe_size", s.universe_size()}, {"signature", sig}, {"relations", rels}};
}

Structure load_structure(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("structure document must be an object");
  for (const char* key : {"universe_size", "signature", "relations"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing \"") + key + "\"");
  if (!doc["universe_size"].is_number_integer() || doc["universe_size"].get<long long>() <= 0)
    throw SchemaError("\"universe_size\" must be a positive integer");
  if (!doc["signature"].is_object() || !doc["relations"].is_object())
    throw SchemaError("\"signature\" and \"relations\" must be objects");

  unsigned m = doc["universe_size"].get<unsigned>();
  Structure s(m);
  const auto& sig = doc["signature"];
  const auto& rels = doc["relations"];
  for (auto it = rels.begin(); it != rels.end(); ++it)
    if (!sig.contains(it.key())) throw SchemaError("relation \"" + it.key() + "\" is not in the signature");
  for (auto it = sig.begin(); it != sig.end(); ++it) {
    if (!it.value().is_number_integer() || it.value().get<long long>() <= 0)
      throw SchemaError("arity of \"" + it.key() + "\" must be a positive integer");
    unsigned arity = it.value().get<unsigned>();
    if (!rels.contains(it.key())) throw SchemaError("signature declares \"" + it.key() + "\" but it is not interpreted");
    NAryRelation table = load_relation(rels[it.key()], m);
    if (table.arity() != arity)
      throw SchemaError("relation \"" + it.key() + "\" has arity " + std::to_string(table.arity()) +
                        " but the signature says " + std::to_string(arity));
    try {
      s.add_relation(it.key(), std::move(table));
    } catch (const Error& e) {
      throw SchemaError(e.what());
    }
  }
  return s;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& document) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << document.dump(2) << '\n';
}

}  // namespace finvar
