#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "finvar/formula.hpp"
#include "finvar/relation.hpp"

namespace finvar {

// A finite relational structure over the universe {0, ..., m-1}. Every
// signature name is interpreted by a table of matching arity and universe.
class Structure {
 public:
  explicit Structure(unsigned universe_size) : universe_size_(universe_size) {}

  unsigned universe_size() const { return universe_size_; }
  const Signature& signature() const { return signature_; }

  // Adds a new relation symbol together with its interpretation.
  void add_relation(const std::string& name, NAryRelation table);
  // Replaces the interpretation of an existing symbol.
  void set_relation(const std::string& name, NAryRelation table);
  const NAryRelation& relation(std::string_view name) const;
  bool has_relation(std::string_view name) const { return interpretation_.count(name) > 0; }
  const std::map<std::string, NAryRelation, std::less<>>& relations() const { return interpretation_; }

  // Image under the element permutation perm (element e becomes perm[e]).
  Structure permuted(std::span<const Element> perm) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  unsigned universe_size_;
  Signature signature_;
  std::map<std::string, NAryRelation, std::less<>> interpretation_;
};

// {"universe_size": m, "signature": {name: arity}, "relations": {name: {"arity": k, "tuples": [[...]]}}}
nlohmann::json save_structure(const Structure& s);
Structure load_structure(const nlohmann::json& document);

// {"arity": k, "tuples": [[...]]}; universe_size comes from context.
nlohmann::json save_relation(const NAryRelation& r);
NAryRelation load_relation(const nlohmann::json& document, unsigned universe_size);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& document);

}  // namespace finvar
