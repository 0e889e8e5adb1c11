#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "kindred/corpus.hpp"

namespace kindred {
namespace {

const char* const kOneCase = R"c([case maybe]
mode = h98
source = """data Maybe a = Nothing | Just a"""
expect_spec = accept Maybe :: * -> *
expect_ghc = accept Maybe :: * -> *
note = "plain"
)c";

int format_error_line(std::string_view text) {
  try {
    parse_corpus(text);
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorpusFormat);
    return e.diagnostic().pos ? e.diagnostic().pos->line : -1;
  }
  ADD_FAILURE() << "parsed: " << text;
  return 0;
}

CorpusCase single(std::string_view text) {
  std::vector<CorpusCase> cs = parse_corpus(text);
  EXPECT_EQ(cs.size(), 1u);
  return cs.empty() ? CorpusCase{} : cs.front();
}

TEST(ParseCorpus, EmptyTextHasNoCases) {
  EXPECT_TRUE(parse_corpus("").empty());
  EXPECT_TRUE(parse_corpus("# only a comment\n\n").empty());
}

TEST(ParseCorpus, OneWellFormedCase) {
  const CorpusCase c = single(kOneCase);
  EXPECT_EQ(c.id, "maybe");
  EXPECT_EQ(c.mode, Mode::kH98);
  EXPECT_EQ(c.source, "data Maybe a = Nothing | Just a");
  EXPECT_EQ(c.note, "plain");
  EXPECT_EQ(c.line, 1);
  ASSERT_EQ(c.expect_spec.tag, Expectation::Tag::kAccept);
  ASSERT_EQ(c.expect_spec.kinds.size(), 1u);
  EXPECT_EQ(c.expect_spec.kinds[0].first, "Maybe");
  EXPECT_EQ(pretty_kind(c.expect_spec.kinds[0].second), "* -> *");
}

TEST(ParseCorpus, MultiLineSourceDropsLeadingNewline) {
  const CorpusCase c = single(R"c([case two]
mode = poly
source = """
data P a = MkP
data Q b = MkQ (P b)
"""
expect_spec = accept P :: forall k. k -> *; Q :: forall k. k -> *
expect_ghc = unspecified
note = ""
)c");
  EXPECT_EQ(c.source, "data P a = MkP\ndata Q b = MkQ (P b)\n");
  EXPECT_EQ(c.mode, Mode::kPoly);
  EXPECT_EQ(c.expect_spec.kinds.size(), 2u);
  EXPECT_EQ(c.expect_ghc.tag, Expectation::Tag::kUnspecified);
}

TEST(ParseCorpus, RejectExpectations) {
  const CorpusCase c = single(R"c([case r]
mode = h98
source = """data T a = MkT (a a)"""
expect_spec = reject OCCURS_CHECK
expect_ghc = reject
note = ""
)c");
  EXPECT_EQ(c.expect_spec.tag, Expectation::Tag::kReject);
  EXPECT_EQ(c.expect_spec.code, ErrorCode::kOccursCheck);
  EXPECT_EQ(c.expect_ghc.tag, Expectation::Tag::kReject);
  EXPECT_FALSE(c.expect_ghc.code.has_value());
}

TEST(ParseCorpus, DuplicateIdReportsItsLine) {
  const std::string text = std::string(kOneCase) + "\n" + kOneCase;
  EXPECT_EQ(format_error_line(text), 8);
}

TEST(ParseCorpus, MalformedInputs) {
  // Field outside any case.
  EXPECT_EQ(format_error_line("mode = h98\n"), 1);
  // Missing expect_ghc.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT"""
expect_spec = accept T :: *
note = ""
)c"),
            1);
  // Unknown mode.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = haskell
)c"),
            2);
  // Spec expectations must be decided.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT"""
expect_spec = unspecified
)c"),
            4);
  // Spec rejections name a code.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT"""
expect_spec = reject
)c"),
            4);
  // Unknown code.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT"""
expect_spec = reject NOT_A_CODE
)c"),
            4);
  // Repeated field.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
mode = poly
)c"),
            3);
  // Bad id.
  EXPECT_EQ(format_error_line("[case a b]\n"), 1);
  // Expected kind does not parse.
  EXPECT_EQ(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT"""
expect_spec = accept T :: * ->
)c"),
            4);
  // Unterminated source.
  EXPECT_GT(format_error_line(R"c([case a]
mode = h98
source = """data T = MkT
)c"),
            0);
}

TEST(ParseCorpus, SourceMustParseInItsMode) {
  // Kind annotations are not Haskell98 syntax.
  EXPECT_GT(format_error_line(R"c([case a]
mode = h98
source = """data T (a :: *) = MkT"""
expect_spec = accept T :: * -> *
expect_ghc = unspecified
note = ""
)c"),
            0);
}

Outcome accepted(std::vector<TyConKind> kinds) {
  return Outcome{true, std::move(kinds), std::nullopt};
}

Outcome rejected(ErrorCode code) {
  return Outcome{false, {}, Diagnostic{code, std::nullopt, "m", ""}};
}

Expectation expect_accept(
    std::vector<std::pair<std::string, std::string>> kinds) {
  Expectation e;
  e.tag = Expectation::Tag::kAccept;
  for (auto& [name, text] : kinds) {
    e.kinds.emplace_back(name, parse_kind(text, Mode::kPoly));
  }
  return e;
}

TEST(Satisfies, KindsCompareUpToAlphaRenaming) {
  const Outcome o = accepted(
      {{"P", parse_kind("forall k1. k1 -> *", Mode::kPoly)}});
  EXPECT_TRUE(satisfies(o, expect_accept({{"P", "forall j. j -> *"}})));
  EXPECT_FALSE(satisfies(o, expect_accept({{"P", "* -> *"}})));
  EXPECT_FALSE(satisfies(o, expect_accept({{"Q", "forall j. j -> *"}})));
  EXPECT_FALSE(satisfies(o, expect_accept({})));
  EXPECT_FALSE(satisfies(o, expect_accept({{"P", "forall j. j -> *"},
                                           {"Q", "*"}})));
}

TEST(Satisfies, Rejections) {
  Expectation any;
  any.tag = Expectation::Tag::kReject;
  Expectation occurs = any;
  occurs.code = ErrorCode::kOccursCheck;
  EXPECT_TRUE(satisfies(rejected(ErrorCode::kOccursCheck), any));
  EXPECT_TRUE(satisfies(rejected(ErrorCode::kOccursCheck), occurs));
  EXPECT_FALSE(satisfies(rejected(ErrorCode::kKindMismatch), occurs));
  EXPECT_FALSE(satisfies(accepted({}), occurs));
  EXPECT_FALSE(
      satisfies(rejected(ErrorCode::kOccursCheck), expect_accept({})));
}

TEST(Describe, AcceptAndReject) {
  EXPECT_EQ(describe(accepted({{"T", Kind::star()},
                               {"S", Kind::arrow(Kind::star(),
                                                 Kind::star())}})),
            "accept T :: *; S :: * -> *");
  EXPECT_EQ(describe(rejected(ErrorCode::kUnboundTyCon)),
            "reject UNBOUND_TYCON");
}

TEST(RunCorpus, DivergenceFollowsTheGhcExpectation) {
  const std::vector<CorpusCase> cases = parse_corpus(R"c([case b-agree]
mode = h98
source = """data Maybe a = Nothing | Just a"""
expect_spec = accept Maybe :: * -> *
expect_ghc = accept Maybe :: * -> *
note = ""

[case a-unknown]
mode = poly
source = """data P a = MkP"""
expect_spec = accept P :: forall k. k -> *
expect_ghc = unspecified
note = ""

[case c-diverge]
mode = h98
source = """data T a = MkT (a a)"""
expect_spec = reject OCCURS_CHECK
expect_ghc = accept T :: * -> *
note = ""

[case d-wrong]
mode = h98
source = """data P a = MkP"""
expect_spec = accept P :: (* -> *) -> *
expect_ghc = accept P :: * -> *
note = ""
)c");
  const std::vector<CorpusCase> before = cases;
  const Report r = run_corpus(cases);
  ASSERT_EQ(r.cases.size(), 4u);
  EXPECT_EQ(r.cases[0].id, "a-unknown");
  EXPECT_EQ(r.cases[1].id, "b-agree");
  EXPECT_EQ(r.cases[2].id, "c-diverge");
  EXPECT_EQ(r.cases[3].id, "d-wrong");

  EXPECT_TRUE(r.cases[0].spec_match);
  EXPECT_EQ(r.cases[0].ghc_divergence, Divergence::kUnknown);
  EXPECT_TRUE(r.cases[1].spec_match);
  EXPECT_EQ(r.cases[1].ghc_divergence, Divergence::kNo);
  EXPECT_TRUE(r.cases[2].spec_match);
  EXPECT_EQ(r.cases[2].ghc_divergence, Divergence::kYes);
  EXPECT_FALSE(r.cases[3].spec_match);
  EXPECT_EQ(r.cases[3].ghc_divergence, Divergence::kNo);

  EXPECT_EQ(r.total, 4u);
  EXPECT_EQ(r.spec_match, 3u);
  EXPECT_EQ(r.divergences, 1u);
  EXPECT_EQ(r.unknown, 1u);
  EXPECT_EQ(cases.size(), before.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(cases[i].id, before[i].id);
    EXPECT_EQ(cases[i].source, before[i].source);
  }
}

TEST(ReportJson, HasTheDocumentedShape) {
  const Report r = run_corpus(parse_corpus(kOneCase));
  const nlohmann::json doc = nlohmann::json::parse(report_json(r));
  ASSERT_EQ(doc["cases"].size(), 1u);
  const nlohmann::json& c = doc["cases"][0];
  EXPECT_EQ(c["id"], "maybe");
  EXPECT_EQ(c["actual"], "accept Maybe :: * -> *");
  EXPECT_EQ(c["spec_match"], true);
  EXPECT_EQ(c["ghc_divergence"], "no");
  EXPECT_EQ(doc["summary"]["total"], 1);
  EXPECT_EQ(doc["summary"]["spec_match"], 1);
  EXPECT_EQ(doc["summary"]["divergences"], 0);
  EXPECT_EQ(doc["summary"]["unknown"], 0);
}

TEST(ShippedCorpus, EveryCaseAsExpected) {
  const std::vector<CorpusCase> cases =
      load_corpus(KINDRED_SOURCE_DIR "/corpus/ghc_divergences.corpus");
  EXPECT_GE(cases.size(), 20u);
  const Report r = run_corpus(cases);
  for (const CaseResult& c : r.cases) {
    EXPECT_TRUE(c.spec_match) << c.id << ": " << describe(c.actual);
  }
  EXPECT_EQ(r.spec_match, r.total);
}

TEST(LoadCorpus, MissingFile) {
  try {
    load_corpus(KINDRED_SOURCE_DIR "/corpus/no_such.corpus");
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorpusFormat);
  }
}

}  // namespace
}  // namespace kindred
