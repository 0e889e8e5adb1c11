#include "kindred/diagnostic.hpp"

#include <fmt/format.h>

#include <array>
#include <utility>

namespace kindred {
namespace {

struct CodeEntry {
  ErrorCode code;
  std::string_view name;
};

constexpr std::array kCodes = {
    CodeEntry{ErrorCode::kParseError, "PARSE_ERROR"},
    CodeEntry{ErrorCode::kDuplicateTyCon, "DUPLICATE_TYCON"},
    CodeEntry{ErrorCode::kDuplicateDataCon, "DUPLICATE_DATACON"},
    CodeEntry{ErrorCode::kDuplicateParam, "DUPLICATE_PARAM"},
    CodeEntry{ErrorCode::kAnnotationInH98, "ANNOTATION_IN_H98"},
    CodeEntry{ErrorCode::kOrphanSignature, "ORPHAN_SIGNATURE"},
    CodeEntry{ErrorCode::kDuplicateSignature, "DUPLICATE_SIGNATURE"},
    CodeEntry{ErrorCode::kUnboundTyCon, "UNBOUND_TYCON"},
    CodeEntry{ErrorCode::kUnboundVar, "UNBOUND_VAR"},
    CodeEntry{ErrorCode::kDependentKind, "DEPENDENT_KIND"},
    CodeEntry{ErrorCode::kOccursCheck, "OCCURS_CHECK"},
    CodeEntry{ErrorCode::kKindMismatch, "KIND_MISMATCH"},
    CodeEntry{ErrorCode::kEscapeError, "ESCAPE_ERROR"},
    CodeEntry{ErrorCode::kQuantificationCheck, "QUANTIFICATION_CHECK"},
    CodeEntry{ErrorCode::kScopeViolation, "SCOPE_VIOLATION"},
    CodeEntry{ErrorCode::kOccursViolation, "OCCURS_VIOLATION"},
    CodeEntry{ErrorCode::kIllFormedContext, "ILL_FORMED_CONTEXT"},
    CodeEntry{ErrorCode::kDepthTooLarge, "DEPTH_TOO_LARGE"},
    CodeEntry{ErrorCode::kCorpusFormat, "CORPUS_FORMAT"},
};

std::string describe(const Diagnostic& d) {
  if (d.decl.empty()) return d.message;
  return fmt::format("in declaration of {}: {}", d.decl, d.message);
}

}  // namespace

std::string_view code_name(ErrorCode code) {
  for (const auto& entry : kCodes) {
    if (entry.code == code) return entry.name;
  }
  return "UNKNOWN";
}

std::optional<ErrorCode> code_from_name(std::string_view name) {
  for (const auto& entry : kCodes) {
    if (entry.name == name) return entry.code;
  }
  return std::nullopt;
}

bool is_syntax_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kDuplicateTyCon:
    case ErrorCode::kDuplicateDataCon:
    case ErrorCode::kDuplicateParam:
    case ErrorCode::kAnnotationInH98:
    case ErrorCode::kOrphanSignature:
    case ErrorCode::kDuplicateSignature:
    case ErrorCode::kCorpusFormat:
      return true;
    default:
      return false;
  }
}

std::string Diagnostic::render(std::string_view file) const {
  if (pos) {
    return fmt::format("error[{}] {}:{}:{}: {}", code_name(code), file,
                       pos->line, pos->col, describe(*this));
  }
  return fmt::format("error[{}] {}: {}", code_name(code), file,
                     describe(*this));
}

KindError::KindError(Diagnostic diag)
    : std::runtime_error(describe(diag)), diag_(std::move(diag)) {}

KindError::KindError(ErrorCode code, std::string message,
                     std::optional<SourcePos> pos)
    : KindError(Diagnostic{code, pos, std::move(message), {}}) {}

KindError& KindError::locate(SourcePos pos, std::string_view decl) {
  bool changed = false;
  if (!diag_.pos) {
    diag_.pos = pos;
    changed = true;
  }
  if (diag_.decl.empty() && !decl.empty()) {
    diag_.decl = std::string(decl);
    changed = true;
  }
  if (changed) {
    static_cast<std::runtime_error&>(*this) =
        std::runtime_error(describe(diag_));
  }
  return *this;
}

}  // namespace kindred
