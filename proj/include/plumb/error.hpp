// Error taxonomy for the whole library.
//
// Operations report failure by throwing plumb::Error with a machine-readable
// kind plus a human-readable message.  Parse errors additionally carry a
// 1-based line/column position in the offending file.
#pragma once

#include <stdexcept>
#include <string>

namespace plumb {

enum class ErrorKind {
    // structural / input validation
    SyntaxError,
    DuplicateId,
    DanglingReference,
    MixedContexts,
    SingularInconsistent,
    PositiveGenus,
    // move calculus
    MissingLocus,
    NotBlowdownable,
    InvalidSequence,
    // cycle / definiteness preconditions
    NotNegativeDefinite,
    Disconnected,
    DimensionMismatch,
    // embeddings
    BudgetExceeded,
    UnverifiedEmbedding,
    // fiber arithmetic
    NotInLipmanCone,
    NonIntegral,
    NonPositive,
    InconsistentArrows,
    NotCoprime,
    MissingArrow,
    // planar factorizations
    Inadmissible,
    // catch-all for broken internal invariants (a bug, not a user error)
    Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind),
          message_(std::move(message)) {}

    Error(ErrorKind kind, std::string message, int line, int col)
        : std::runtime_error(std::string(error_kind_name(kind)) + " at line " +
                             std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + message),
          kind_(kind),
          message_(std::move(message)),
          line_(line),
          col_(col) {}

    ErrorKind kind() const { return kind_; }
    const std::string& message() const { return message_; }
    // 0 when no source position is attached.
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    ErrorKind kind_;
    std::string message_;
    int line_ = 0;
    int col_ = 0;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace plumb
