#ifndef TAI_STRUCTURE_HPP
#define TAI_STRUCTURE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tai {

// A relational tuple of domain elements. Arity 0 is the empty tuple.
using Tuple = std::vector<int>;

// A finite relation: an arity plus a set of tuples of that arity.
// Tuples are kept in lexicographic order, which makes printing and
// equality canonical.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int arity) : arity_(arity) {}
  Relation(int arity, std::set<Tuple> tuples);

  int arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }
  void insert(Tuple t);
  const std::set<Tuple>& tuples() const { return tuples_; }

  // The full relation over a domain of the given size.
  static Relation full(int arity, int domainSize);

  bool operator==(const Relation& o) const {
    return arity_ == o.arity_ && tuples_ == o.tuples_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }
  bool operator<(const Relation& o) const {  // ordering for use as map keys
    if (arity_ != o.arity_) return arity_ < o.arity_;
    return tuples_ < o.tuples_;
  }

 private:
  int arity_ = 0;
  std::set<Tuple> tuples_;
};

// Relation symbols with arities plus constant symbols. Names are unique
// across both kinds; predicate variables bound in formulas must not reuse
// relation names.
struct Signature {
  std::vector<std::pair<std::string, int>> relations;
  std::vector<std::string> constants;

  std::optional<int> relationArity(const std::string& name) const;
  bool hasConstant(const std::string& name) const;

  // Throws SemanticError on duplicate or reserved names, negative arities.
  void validate() const;
};

// The name is reserved as a formula keyword and may not be used for a
// relation, constant, or variable.
bool is_reserved_name(const std::string& name);

// A finite structure: domain {0, ..., n-1}, a signature, and
// interpretations for every signature symbol.
class FiniteStructure {
 public:
  FiniteStructure(int domainSize, Signature sig,
                  std::map<std::string, Relation> relations,
                  std::map<std::string, int> constants);

  int domainSize() const { return domainSize_; }
  const Signature& signature() const { return sig_; }
  const Relation& relation(const std::string& name) const;  // throws if absent
  const Relation* findRelation(const std::string& name) const;
  std::optional<int> constant(const std::string& name) const;
  const std::map<std::string, Relation>& relations() const { return rels_; }
  const std::map<std::string, int>& constants() const { return consts_; }

  // Returns a copy extended with extra relations (used for auxiliary
  // stage-comparison relations). Names must not collide.
  FiniteStructure withRelations(const std::vector<std::pair<std::string, Relation>>& extra) const;

  bool operator==(const FiniteStructure& o) const {
    return domainSize_ == o.domainSize_ && rels_ == o.rels_ && consts_ == o.consts_;
  }

 private:
  int domainSize_;
  Signature sig_;
  std::map<std::string, Relation> rels_;
  std::map<std::string, int> consts_;
};

// A first-order variable assignment. Bindings form a stack; the innermost
// binding of a name wins, so quantifiers can shadow outer variables.
class Assignment {
 public:
  std::optional<int> lookup(const std::string& name) const;
  void push(const std::string& name, int value);
  void pop();
  std::size_t size() const { return binds_.size(); }
  // Overwrites the value at a known stack slot (used by evaluation kernels
  // that rebind a fixed block of variables per candidate tuple).
  void setSlot(std::size_t slot, int value) { binds_[slot].second = value; }

 private:
  std::vector<std::pair<std::string, int>> binds_;
};

// Parses the line-oriented structure format:
//
//   # comment
//   domain 3
//   const a = 0
//   rel E/2 = { (0,1) (1,2) }
//
// Exactly one `domain` line, which must come first. Throws ParseError with
// a line number on malformed input, SemanticError never (range and arity
// problems are reported as ParseError here since they are file problems).
FiniteStructure parse_structure(std::string_view text);

// Canonical form: domain line, then consts sorted by name, then rels sorted
// by name with tuples in lexicographic order. parse_structure(print_structure(s)) == s.
std::string print_structure(const FiniteStructure& s);

}  // namespace tai

#endif
