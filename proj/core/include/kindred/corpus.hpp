#ifndef KINDRED_CORPUS_HPP
#define KINDRED_CORPUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kindred/diagnostic.hpp"
#include "kindred/h98.hpp"
#include "kindred/kind.hpp"
#include "kindred/surface.hpp"

namespace kindred {

struct Expectation {
  enum class Tag { kAccept, kReject, kUnspecified };

  Tag tag = Tag::kUnspecified;
  /// Expected kinds when accepting, as written.
  std::vector<std::pair<std::string, Kind>> kinds;
  /// Expected code when rejecting; absent means any rejection.
  std::optional<ErrorCode> code;
};

struct CorpusCase {
  std::string id;
  Mode mode = Mode::kH98;
  std::string source;
  Expectation expect_spec;
  Expectation expect_ghc;
  std::string note;
  int line = 0;  // line of the `[case ...]` header
};

/// Throws CORPUS_FORMAT with the offending line. Every source must parse in
/// its mode.
std::vector<CorpusCase> parse_corpus(std::string_view text);
std::vector<CorpusCase> load_corpus(const std::string& path);

struct Outcome {
  bool accepted = false;
  std::vector<TyConKind> kinds;  // source order, when accepted
  std::optional<Diagnostic> error;
};

Outcome run_case(const CorpusCase& c);

/// Kinds compared up to alpha-renaming; every tycon must be listed.
bool satisfies(const Outcome& actual, const Expectation& expected);

/// `accept T :: k; S :: k` or `reject CODE`.
std::string describe(const Outcome& o);

enum class Divergence { kNo, kYes, kUnknown };

std::string_view divergence_name(Divergence d);

struct CaseResult {
  std::string id;
  Mode mode = Mode::kH98;
  Outcome actual;
  bool spec_match = false;
  Divergence ghc_divergence = Divergence::kUnknown;
};

struct Report {
  std::vector<CaseResult> cases;  // sorted by id
  std::size_t total = 0;
  std::size_t spec_match = 0;
  std::size_t divergences = 0;
  std::size_t unknown = 0;
};

Report run_corpus(const std::vector<CorpusCase>& cases);

/// {"cases":[{"id","actual","spec_match","ghc_divergence"}],
///  "summary":{"total","spec_match","divergences","unknown"}}
std::string report_json(const Report& r);
std::string report_table(const Report& r);

}  // namespace kindred

#endif  // KINDRED_CORPUS_HPP
