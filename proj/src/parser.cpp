#include <cctype>
#include <optional>

#include "tai/errors.hpp"
#include "tai/formula.hpp"

namespace tai {

namespace {

enum class Tok {
  Name, Number, LParen, RParen, LBracket, RBracket, Comma, Semi, Colon, Dot,
  Eq, Bang, Amp, Pipe, Arrow, DArrow, KwExists, KwForall, KwIter, KwDerived,
  KwNext, KwEventually, KwAlways, KwUntil, End
};

struct Token {
  Tok kind;
  std::string text;   // Name / Number / derived keyword
  DerivedKind dkind = DerivedKind::Lfp;
  int line = 1, col = 1;
};

struct Lexer {
  std::string_view s;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s[pos + i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    pos += n;
  }

  Token next() {
    for (;;) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance(1);
      if (pos < s.size() && s[pos] == '#') {  // comment to end of line
        while (pos < s.size() && s[pos] != '\n') advance(1);
        continue;
      }
      break;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= s.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = s[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < s.size() && s[pos + 1] == b;
    };
    if (two('<', '-')) {
      if (pos + 2 < s.size() && s[pos + 2] == '>') {
        t.kind = Tok::DArrow;
        advance(3);
        return t;
      }
      throw ParseError("expected '<->'", line, col);
    }
    if (two('-', '>')) {
      t.kind = Tok::Arrow;
      advance(2);
      return t;
    }
    switch (c) {
      case '(': t.kind = Tok::LParen; advance(1); return t;
      case ')': t.kind = Tok::RParen; advance(1); return t;
      case '[': t.kind = Tok::LBracket; advance(1); return t;
      case ']': t.kind = Tok::RBracket; advance(1); return t;
      case ',': t.kind = Tok::Comma; advance(1); return t;
      case ';': t.kind = Tok::Semi; advance(1); return t;
      case ':': t.kind = Tok::Colon; advance(1); return t;
      case '.': t.kind = Tok::Dot; advance(1); return t;
      case '=': t.kind = Tok::Eq; advance(1); return t;
      case '!': t.kind = Tok::Bang; advance(1); return t;
      case '&': t.kind = Tok::Amp; advance(1); return t;
      case '|': t.kind = Tok::Pipe; advance(1); return t;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance(1);
      t.kind = Tok::Number;
      t.text = std::string(s.substr(start, pos - start));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        advance(1);
      std::string word(s.substr(start, pos - start));
      if (word == "exists") t.kind = Tok::KwExists;
      else if (word == "forall") t.kind = Tok::KwForall;
      else if (word == "iter") t.kind = Tok::KwIter;
      else if (word == "X") t.kind = Tok::KwNext;
      else if (word == "F") t.kind = Tok::KwEventually;
      else if (word == "G") t.kind = Tok::KwAlways;
      else if (word == "U") t.kind = Tok::KwUntil;
      else if (word == "lfp") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::Lfp; }
      else if (word == "ifp") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::Ifp; }
      else if (word == "pfp") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::Pfp; }
      else if (word == "pfpgen") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::PfpGen; }
      else if (word == "pfpcup") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::PfpCup; }
      else if (word == "pfpcap") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::PfpCap; }
      else if (word == "rfp") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::Rfp; }
      else if (word == "opmu") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::OpMu; }
      else if (word == "opnu") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::OpNu; }
      else if (word == "id") { t.kind = Tok::KwDerived; t.dkind = DerivedKind::Id; }
      else t.kind = Tok::Name;
      t.text = std::move(word);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
};

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig, const std::map<std::string, int>* extra)
      : lex_{text}, sig_(sig), extra_(extra) {
    cur_ = lex_.next();
  }

  Formula parseAll() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    // Well-formedness failures stay SemanticError: syntax errors and
    // semantic errors are distinct caller-visible categories.
    check_well_formed(f, sig_, extra_);
    return f;
  }

 private:
  Lexer lex_;
  Token cur_;
  const Signature* sig_;
  const std::map<std::string, int>* extra_;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }

  void bump() { cur_ = lex_.next(); }

  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    bump();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    bump();
  }

  std::string name(const char* what) {
    if (cur_.kind != Tok::Name) fail(std::string("expected ") + what);
    std::string n = cur_.text;
    bump();
    return n;
  }

  Term term() {
    if (cur_.kind == Tok::Number) {
      int v = std::atoi(cur_.text.c_str());
      bump();
      return Term::element(v);
    }
    std::string n = name("a term");
    if (sig_ && sig_->hasConstant(n)) return Term::constant(n);
    return Term::variable(n);
  }

  std::vector<Term> termList() {  // after '('; consumes ')'
    std::vector<Term> ts;
    if (cur_.kind != Tok::RParen) {
      ts.push_back(term());
      while (accept(Tok::Comma)) ts.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return ts;
  }

  // <-> (right-assoc)
  Formula formula() {
    Formula l = impliesLevel();
    if (accept(Tok::DArrow)) return Formula::iff(std::move(l), formula());
    return l;
  }

  // -> (right-assoc)
  Formula impliesLevel() {
    Formula l = orLevel();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(l), impliesLevel());
    return l;
  }

  // | (left-assoc)
  Formula orLevel() {
    Formula l = untilLevel();
    while (accept(Tok::Pipe)) l = Formula::disj(std::move(l), untilLevel());
    return l;
  }

  // U (left-assoc), binds tighter than | and looser than &
  Formula untilLevel() {
    Formula l = andLevel();
    while (accept(Tok::KwUntil)) l = Formula::until(std::move(l), andLevel());
    return l;
  }

  // & (left-assoc)
  Formula andLevel() {
    Formula l = unary();
    while (accept(Tok::Amp)) l = Formula::conj(std::move(l), unary());
    return l;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::Bang: bump(); return Formula::negation(unary());
      case Tok::KwNext: bump(); return Formula::next(unary());
      case Tok::KwEventually: bump(); return Formula::eventually(unary());
      case Tok::KwAlways: bump(); return Formula::always(unary());
      case Tok::KwExists: {
        bump();
        std::string v = name("a variable");
        expect(Tok::Dot, "'.'");
        return Formula::exists(std::move(v), formula());  // binds to the end
      }
      case Tok::KwForall: {
        bump();
        std::string v = name("a variable");
        expect(Tok::Dot, "'.'");
        return Formula::forall(std::move(v), formula());
      }
      default:
        return primary();
    }
  }

  IterationDef definition() {
    IterationDef d;
    d.pred = name("a predicate name");
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::RParen) {
      d.vars.push_back(name("a variable"));
      while (accept(Tok::Comma)) d.vars.push_back(name("a variable"));
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Colon, "':'");
    d.body = formula();
    return d;
  }

  IterationSystem definitions() {
    IterationSystem sys;
    sys.defs.push_back(definition());
    while (accept(Tok::Semi)) sys.defs.push_back(definition());
    return sys;
  }

  Formula primary() {
    switch (cur_.kind) {
      case Tok::LParen: {
        bump();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LBracket: {  // [header][iter defs](args)
        bump();
        Formula header = formula();
        expect(Tok::RBracket, "']'");
        expect(Tok::LBracket, "'['");
        expect(Tok::KwIter, "'iter'");
        IterationSystem sys = definitions();
        expect(Tok::RBracket, "']'");
        expect(Tok::LParen, "'('");
        std::vector<Term> ts = termList();
        return Formula::iter(std::move(header), std::move(sys), std::move(ts));
      }
      case Tok::KwDerived: {
        DerivedKind k = cur_.dkind;
        bump();
        expect(Tok::LBracket, "'['");
        IterationSystem sys = definitions();
        expect(Tok::RBracket, "']'");
        expect(Tok::LParen, "'('");
        std::vector<Term> ts = termList();
        return Formula::derived(k, std::move(sys), std::move(ts));
      }
      case Tok::Name: {
        // Either an atom NAME(args) or the left side of an equality.
        std::string n = cur_.text;
        bump();
        if (cur_.kind == Tok::LParen) {
          bump();
          std::vector<Term> ts = termList();
          return Formula::atom(std::move(n), std::move(ts));
        }
        Term lhs = (sig_ && sig_->hasConstant(n)) ? Term::constant(n) : Term::variable(n);
        expect(Tok::Eq, "'='");
        return Formula::equal(std::move(lhs), term());
      }
      case Tok::Number: {
        Term lhs = term();
        expect(Tok::Eq, "'='");
        return Formula::equal(std::move(lhs), term());
      }
      default:
        fail("expected a formula");
    }
  }
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature* sig,
                      const std::map<std::string, int>* extraPreds) {
  Parser p(text, sig, extraPreds);
  return p.parseAll();
}

}  // namespace tai
