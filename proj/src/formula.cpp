#include "finvar/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "finvar/error.hpp"

namespace finvar {

Signature::Signature(std::initializer_list<std::pair<const std::string, unsigned>> entries) {
  for (const auto& [name, arity] : entries) add(name, arity);
}

void Signature::add(const std::string& name, unsigned arity) {
  if (arity == 0) throw SignatureError("relation '" + name + "' must have arity >= 1");
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw SignatureError("invalid relation name '" + name + "'");
  if (!entries_.emplace(name, arity).second)
    throw SignatureError("relation '" + name + "' declared twice");
}

std::optional<unsigned> Signature::arity(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Formula make_formula(Formula::Node node) {
  return Formula(std::make_shared<const Formula::Node>(std::move(node)));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.identity() == b.identity()) return true;
  if (a.kind() != b.kind()) return false;
  const auto& x = *a.identity();
  const auto& y = *b.identity();
  if (x.relation != y.relation || x.vars != y.vars) return false;
  if (x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

Formula atom(std::string relation, std::vector<VarIndex> args) {
  if (args.empty()) throw SignatureError("atom '" + relation + "' needs at least one argument");
  return make_formula({FormulaKind::Atom, std::move(relation), std::move(args), {}});
}

Formula eq(VarIndex left, VarIndex right) {
  return make_formula({FormulaKind::Eq, {}, {left, right}, {}});
}

Formula negate(Formula body) {
  return make_formula({FormulaKind::Not, {}, {}, {std::move(body)}});
}

Formula conj(Formula lhs, Formula rhs) {
  return make_formula({FormulaKind::And, {}, {}, {std::move(lhs), std::move(rhs)}});
}

Formula exists(VarIndex bound, Formula body) {
  return make_formula({FormulaKind::Exists, {}, {bound}, {std::move(body)}});
}

Formula disj(Formula lhs, Formula rhs) {
  return negate(conj(negate(std::move(lhs)), negate(std::move(rhs))));
}

Formula implies(Formula lhs, Formula rhs) {
  return negate(conj(std::move(lhs), negate(std::move(rhs))));
}

Formula iff(Formula lhs, Formula rhs) {
  return conj(implies(lhs, rhs), implies(rhs, lhs));
}

Formula forall(VarIndex bound, Formula body) {
  return negate(exists(bound, negate(std::move(body))));
}

Formula neq(VarIndex left, VarIndex right) { return negate(eq(left, right)); }

Formula verum() { return eq(0, 0); }

Formula falsum() { return negate(verum()); }

Formula conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return verum();
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula disj_all(std::span<const Formula> parts) {
  if (parts.empty()) return falsum();
  if (parts.size() == 1) return parts[0];
  // ~(~p1 & ~p2 & ... & ~pk)
  Formula acc = negate(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, negate(parts[i]));
  return negate(acc);
}

Formula exists_all(std::span<const VarIndex> bound, Formula body) {
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Tilde, Amp, Bar, Arrow, DArrow, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
      case '~': out.push_back({Tok::Tilde, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::Amp, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Bar, "|", start}); ++i; continue;
      case '=': out.push_back({Tok::Equals, "=", start}); ++i; continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::DArrow, "<->", start});
      i += 3;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

std::optional<VarIndex> as_variable(const std::string& ident) {
  if (ident.size() < 2 || ident[0] != 'v') return std::nullopt;
  if (!std::all_of(ident.begin() + 1, ident.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  if (ident.size() > 10) return std::nullopt;
  return static_cast<VarIndex>(std::stoul(ident.substr(1)));
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().pos);
    next();
  }

  bool at_quantifier() const {
    const Token& t = peek();
    return t.kind == Tok::Ident && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::Ident &&
           as_variable(peek(1).text).has_value();
  }

  VarIndex variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) throw ParseError("expected variable", t.pos);
    auto v = as_variable(t.text);
    if (!v) throw ParseError("expected variable, got '" + t.text + "'", t.pos);
    next();
    return *v;
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return biconditional();
  }

  Formula quantified() {
    bool universal = next().text == "A";
    VarIndex v = variable();
    Formula body = formula();
    return universal ? forall(v, std::move(body)) : exists(v, std::move(body));
  }

  Formula biconditional() {
    Formula lhs = implication();
    if (peek().kind == Tok::DArrow) {
      next();
      return iff(std::move(lhs), biconditional());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Bar) {
      next();
      acc = disj(std::move(acc), conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::Amp) {
      next();
      acc = conj(std::move(acc), unary());
    }
    return acc;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      next();
      return negate(unary());
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_quantifier()) return quantified();
    return atomic();
  }

  Formula atomic() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
    if (auto v = as_variable(t.text)) {
      next();
      expect(Tok::Equals, "'='");
      return eq(*v, variable());
    }
    std::string name = t.text;
    std::size_t name_pos = t.pos;
    next();
    expect(Tok::LParen, "'('");
    std::vector<VarIndex> args{variable()};
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(variable());
    }
    expect(Tok::RParen, "')'");
    auto arity = sig_.arity(name);
    if (!arity) throw SignatureError("unknown relation '" + name + "' at position " + std::to_string(name_pos));
    if (*arity != args.size())
      throw SignatureError("relation '" + name + "' has arity " + std::to_string(*arity) + " but " +
                           std::to_string(args.size()) + " arguments were given at position " +
                           std::to_string(name_pos));
    return atom(std::move(name), std::move(args));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

// ---------------------------------------------------------------------------
// Rendering

void render_into(const Formula& f, std::string& out);

void render_var(VarIndex v, std::string& out) {
  out += 'v';
  out += std::to_string(v);
}

void render_unary(const Formula& f, std::string& out) {
  if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Exists) {
    out += '(';
    render_into(f, out);
    out += ')';
  } else {
    render_into(f, out);
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      out += f.relation();
      out += '(';
      bool first = true;
      for (VarIndex v : f.args()) {
        if (!first) out += ", ";
        first = false;
        render_var(v, out);
      }
      out += ')';
      return;
    }
    case FormulaKind::Eq:
      render_var(f.left(), out);
      out += " = ";
      render_var(f.right(), out);
      return;
    case FormulaKind::Not:
      out += '~';
      render_unary(f.body(), out);
      return;
    case FormulaKind::And:
      if (f.lhs().kind() == FormulaKind::Exists) {
        out += '(';
        render_into(f.lhs(), out);
        out += ')';
      } else {
        render_into(f.lhs(), out);
      }
      out += " & ";
      render_unary(f.rhs(), out);
      return;
    case FormulaKind::Exists:
      out += "E ";
      render_var(f.bound(), out);
      out += ' ';
      render_into(f.body(), out);
      return;
  }
}

}  // namespace

Formula parse(std::string_view text, const Signature& signature) {
  return Parser(text, signature).parse_all();
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

unsigned variable_span(const Formula& f) {
  std::unordered_map<const Formula::Node*, unsigned> memo;
  auto go = [&](auto& self, const Formula& g) -> unsigned {
    if (auto it = memo.find(g.identity()); it != memo.end()) return it->second;
    unsigned span = 0;
    for (VarIndex v : g.identity()->vars) span = std::max(span, v + 1);
    for (const Formula& c : g.identity()->children) span = std::max(span, self(self, c));
    memo.emplace(g.identity(), span);
    return span;
  };
  return go(go, f);
}

bool is_restricted(const Formula& f, [[maybe_unused]] const Signature& signature) {
  std::unordered_map<const Formula::Node*, bool> memo;
  auto go = [&](auto& self, const Formula& g) -> bool {
    if (auto it = memo.find(g.identity()); it != memo.end()) return it->second;
    bool ok = true;
    if (g.kind() == FormulaKind::Atom) {
      auto args = g.args();
      for (std::size_t i = 0; i < args.size(); ++i) ok = ok && args[i] == i;
    }
    for (const Formula& c : g.identity()->children) ok = ok && self(self, c);
    memo.emplace(g.identity(), ok);
    return ok;
  };
  return go(go, f);
}

std::set<std::string> relations_used(const Formula& f) {
  std::set<std::string> names;
  std::set<const Formula::Node*> seen;
  auto go = [&](auto& self, const Formula& g) -> void {
    if (!seen.insert(g.identity()).second) return;
    if (g.kind() == FormulaKind::Atom) names.insert(g.relation());
    for (const Formula& c : g.identity()->children) self(self, c);
  };
  go(go, f);
  return names;
}

std::uint64_t tree_size(const Formula& f, std::uint64_t limit) {
  std::unordered_map<const Formula::Node*, std::uint64_t> memo;
  auto go = [&](auto& self, const Formula& g) -> std::uint64_t {
    if (auto it = memo.find(g.identity()); it != memo.end()) return it->second;
    std::uint64_t size = 1;
    for (const Formula& c : g.identity()->children) {
      std::uint64_t s = self(self, c);
      size = (s >= limit - std::min(size, limit)) ? limit : size + s;
    }
    size = std::min(size, limit);
    memo.emplace(g.identity(), size);
    return size;
  };
  return go(go, f);
}

}  // namespace finvar
