#ifndef TAI_ERRORS_HPP
#define TAI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tai {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical error in a structure file or formula text.
// line/col are 1-based; 0 means "no precise location".
struct ParseError : Error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int l = 0, int c = 0)
      : Error(l > 0 ? msg + " (line " + std::to_string(l) + ", col " + std::to_string(c) + ")"
                    : msg),
        line(l), col(c) {}
};

// Well-formed syntax that cannot be given a meaning: arity clashes,
// unbound symbols, unsupported fragments, and similar.
struct SemanticError : Error {
  using Error::Error;
};

// A fixpoint operator's polarity side condition is violated.
struct PolarityError : SemanticError {
  using SemanticError::SemanticError;
};

// A translation met a header shape outside the implemented fragment.
struct UnsupportedHeader : SemanticError {
  using SemanticError::SemanticError;
};

// Stage iteration exceeded the configured step budget before closing a lasso.
struct StepLimitExceeded : Error {
  using Error::Error;
};

}  // namespace tai

#endif
