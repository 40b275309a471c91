#include "tai/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "tai/errors.hpp"

namespace tai {

Relation::Relation(int arity, std::set<Tuple> tuples) : arity_(arity) {
  for (const Tuple& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw SemanticError("tuple arity mismatch in relation literal");
  }
  tuples_ = std::move(tuples);
}

void Relation::insert(Tuple t) {
  if (static_cast<int>(t.size()) != arity_)
    throw SemanticError("tuple arity mismatch on insert");
  tuples_.insert(std::move(t));
}

Relation Relation::full(int arity, int domainSize) {
  Relation r(arity);
  Tuple t(arity, 0);
  while (true) {
    r.tuples_.insert(t);
    int i = arity - 1;
    for (; i >= 0; --i) {
      if (++t[i] < domainSize) break;
      t[i] = 0;
    }
    if (i < 0) break;
  }
  return r;
}

std::optional<int> Signature::relationArity(const std::string& name) const {
  for (const auto& [n, a] : relations)
    if (n == name) return a;
  return std::nullopt;
}

bool Signature::hasConstant(const std::string& name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

bool is_reserved_name(const std::string& name) {
  static const std::set<std::string> kReserved = {
      "exists", "forall", "iter", "lfp",   "ifp",   "pfp", "pfpgen",
      "pfpcup", "pfpcap", "rfp",  "opmu",  "opnu",  "id",  "X",
      "F",      "G",      "U"};
  return kReserved.count(name) != 0;
}

void Signature::validate() const {
  std::set<std::string> seen;
  for (const auto& [n, a] : relations) {
    if (a < 0) throw SemanticError("negative arity for relation " + n);
    if (is_reserved_name(n)) throw SemanticError("reserved name used as relation: " + n);
    if (!seen.insert(n).second) throw SemanticError("duplicate symbol: " + n);
  }
  for (const auto& n : constants) {
    if (is_reserved_name(n)) throw SemanticError("reserved name used as constant: " + n);
    if (!seen.insert(n).second) throw SemanticError("duplicate symbol: " + n);
  }
}

FiniteStructure::FiniteStructure(int domainSize, Signature sig,
                                 std::map<std::string, Relation> relations,
                                 std::map<std::string, int> constants)
    : domainSize_(domainSize), sig_(std::move(sig)), rels_(std::move(relations)),
      consts_(std::move(constants)) {
  if (domainSize_ <= 0) throw SemanticError("domain must be non-empty");
  sig_.validate();
  for (const auto& [name, arity] : sig_.relations) {
    auto it = rels_.find(name);
    if (it == rels_.end()) throw SemanticError("missing interpretation for relation " + name);
    if (it->second.arity() != arity)
      throw SemanticError("interpretation arity mismatch for relation " + name);
    for (const Tuple& t : it->second.tuples())
      for (int e : t)
        if (e < 0 || e >= domainSize_)
          throw SemanticError("element out of range in relation " + name);
  }
  if (rels_.size() != sig_.relations.size())
    throw SemanticError("interpretation for undeclared relation");
  for (const auto& name : sig_.constants) {
    auto it = consts_.find(name);
    if (it == consts_.end()) throw SemanticError("missing interpretation for constant " + name);
    if (it->second < 0 || it->second >= domainSize_)
      throw SemanticError("constant out of range: " + name);
  }
  if (consts_.size() != sig_.constants.size())
    throw SemanticError("interpretation for undeclared constant");
}

const Relation& FiniteStructure::relation(const std::string& name) const {
  auto it = rels_.find(name);
  if (it == rels_.end()) throw SemanticError("no such relation: " + name);
  return it->second;
}

const Relation* FiniteStructure::findRelation(const std::string& name) const {
  auto it = rels_.find(name);
  return it == rels_.end() ? nullptr : &it->second;
}

std::optional<int> FiniteStructure::constant(const std::string& name) const {
  auto it = consts_.find(name);
  if (it == consts_.end()) return std::nullopt;
  return it->second;
}

FiniteStructure FiniteStructure::withRelations(
    const std::vector<std::pair<std::string, Relation>>& extra) const {
  Signature sig = sig_;
  auto rels = rels_;
  for (const auto& [name, rel] : extra) {
    sig.relations.emplace_back(name, rel.arity());
    if (!rels.emplace(name, rel).second)
      throw SemanticError("relation already present: " + name);
  }
  return FiniteStructure(domainSize_, std::move(sig), std::move(rels), consts_);
}

std::optional<int> Assignment::lookup(const std::string& name) const {
  for (auto it = binds_.rbegin(); it != binds_.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

void Assignment::push(const std::string& name, int value) {
  binds_.emplace_back(name, value);
}

void Assignment::pop() { binds_.pop_back(); }

namespace {

// Line-oriented tokenizer state for one structure-file line.
struct LineCursor {
  std::string_view s;
  std::size_t pos = 0;
  int line;

  void skipSpace() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool atEnd() {
    skipSpace();
    return pos >= s.size();
  }
  char peek() {
    skipSpace();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    skipSpace();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", line, static_cast<int>(pos) + 1);
    ++pos;
  }
  std::string ident() {
    skipSpace();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("expected a name", line, static_cast<int>(pos) + 1);
    return std::string(s.substr(start, pos - start));
  }
  int number() {
    skipSpace();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a number", line, static_cast<int>(pos) + 1);
    return std::atoi(std::string(s.substr(start, pos - start)).c_str());
  }
};

}  // namespace

FiniteStructure parse_structure(std::string_view text) {
  std::optional<int> domain;
  Signature sig;
  std::map<std::string, Relation> rels;
  std::map<std::string, int> consts;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    LineCursor c{raw, 0, lineNo};
    if (c.atEnd()) continue;

    std::string kw = c.ident();
    if (kw == "domain") {
      if (domain) throw ParseError("duplicate domain line", lineNo, 1);
      int n = c.number();
      if (n <= 0) throw ParseError("domain must be positive", lineNo, 1);
      domain = n;
    } else if (kw == "const") {
      if (!domain) throw ParseError("domain line must come first", lineNo, 1);
      std::string name = c.ident();
      c.expect('=');
      int v = c.number();
      if (v >= *domain) throw ParseError("constant value out of domain range", lineNo, 1);
      if (sig.relationArity(name) || sig.hasConstant(name))
        throw ParseError("duplicate symbol: " + name, lineNo, 1);
      if (is_reserved_name(name)) throw ParseError("reserved name: " + name, lineNo, 1);
      sig.constants.push_back(name);
      consts[name] = v;
    } else if (kw == "rel") {
      if (!domain) throw ParseError("domain line must come first", lineNo, 1);
      std::string name = c.ident();
      c.expect('/');
      int arity = c.number();
      c.expect('=');
      c.expect('{');
      Relation r(arity);
      while (c.peek() != '}') {
        c.expect('(');
        Tuple t;
        if (c.peek() != ')') {
          t.push_back(c.number());
          while (c.peek() == ',') {
            c.expect(',');
            t.push_back(c.number());
          }
        }
        c.expect(')');
        if (static_cast<int>(t.size()) != arity)
          throw ParseError("tuple arity mismatch in relation " + name, lineNo, 1);
        for (int e : t)
          if (e >= *domain)
            throw ParseError("element out of domain range in relation " + name, lineNo, 1);
        r.insert(std::move(t));
      }
      c.expect('}');
      if (sig.relationArity(name) || sig.hasConstant(name))
        throw ParseError("duplicate symbol: " + name, lineNo, 1);
      if (is_reserved_name(name)) throw ParseError("reserved name: " + name, lineNo, 1);
      sig.relations.emplace_back(name, arity);
      rels.emplace(name, std::move(r));
    } else {
      throw ParseError("unknown declaration: " + kw, lineNo, 1);
    }
    if (!c.atEnd()) throw ParseError("trailing input", lineNo, static_cast<int>(c.pos) + 1);
  }
  if (!domain) throw ParseError("missing domain line", lineNo, 1);
  return FiniteStructure(*domain, std::move(sig), std::move(rels), std::move(consts));
}

std::string print_structure(const FiniteStructure& s) {
  std::ostringstream out;
  out << "domain " << s.domainSize() << "\n";
  for (const auto& [name, v] : s.constants()) out << "const " << name << " = " << v << "\n";
  for (const auto& [name, rel] : s.relations()) {
    out << "rel " << name << "/" << rel.arity() << " = {";
    for (const Tuple& t : rel.tuples()) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ",";
        out << t[i];
      }
      out << ")";
    }
    out << " }\n";
  }
  return out.str();
}

}  // namespace tai
