#ifndef KINDRED_DIAGNOSTIC_HPP
#define KINDRED_DIAGNOSTIC_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kindred {

/// Line and column are 1-based; offset is a byte offset into the source.
struct SourcePos {
  int line = 1;
  int col = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorCode {
  kParseError,
  kDuplicateTyCon,
  kDuplicateDataCon,
  kDuplicateParam,
  kAnnotationInH98,
  kOrphanSignature,
  kDuplicateSignature,
  kUnboundTyCon,
  kUnboundVar,
  kDependentKind,
  kOccursCheck,
  kKindMismatch,
  kEscapeError,
  kQuantificationCheck,
  kScopeViolation,
  kOccursViolation,
  kIllFormedContext,
  kDepthTooLarge,
  kCorpusFormat,
};

/// Stable upper-snake-case name used on the command line and in corpora.
std::string_view code_name(ErrorCode code);
std::optional<ErrorCode> code_from_name(std::string_view name);

/// Codes raised while reading source text rather than while inferring kinds.
bool is_syntax_error(ErrorCode code);

struct Diagnostic {
  ErrorCode code = ErrorCode::kParseError;
  std::optional<SourcePos> pos;
  std::string message;
  /// Name of the declaration being checked, when there is one.
  std::string decl;

  /// `error[CODE] file:line:col: message`
  std::string render(std::string_view file) const;
};

class KindError : public std::runtime_error {
 public:
  explicit KindError(Diagnostic diag);
  KindError(ErrorCode code, std::string message,
            std::optional<SourcePos> pos = std::nullopt);

  const Diagnostic& diagnostic() const { return diag_; }
  ErrorCode code() const { return diag_.code; }

  /// Fills in location and declaration when the thrower did not know them.
  KindError& locate(SourcePos pos, std::string_view decl);

 private:
  Diagnostic diag_;
};

/// A broken internal invariant. Never caused by user input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kindred

#endif  // KINDRED_DIAGNOSTIC_HPP
