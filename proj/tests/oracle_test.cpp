#include <gtest/gtest.h>

#include "kindred/h98.hpp"
#include "kindred/oracle.hpp"
#include "kindred/poly.hpp"
#include "program_gen.hpp"

namespace kindred {
namespace {

Kind mk(std::string_view text) { return parse_kind(text, Mode::kPoly); }
Program h98(std::string_view text) { return parse_program(text, Mode::kH98); }

std::vector<std::string> printed(const std::vector<Kind>& ks) {
  std::vector<std::string> out;
  for (const Kind& k : ks) out.push_back(pretty_kind(k));
  return out;
}

TEST(Enumerate, SmallDepths) {
  using S = std::vector<std::string>;
  EXPECT_EQ(printed(oracle::enumerate_monokinds(0)), (S{"*"}));
  EXPECT_EQ(printed(oracle::enumerate_monokinds(1)), (S{"*", "* -> *"}));
  EXPECT_EQ(printed(oracle::enumerate_monokinds(2)),
            (S{"*", "* -> *", "* -> * -> *", "(* -> *) -> *",
               "(* -> *) -> * -> *"}));
}

TEST(Enumerate, CountsFollowTheRecurrence) {
  std::size_t expected = 1;
  for (int d = 0; d <= oracle::kMaxDepth; ++d) {
    const std::vector<Kind> ks = oracle::enumerate_monokinds(d);
    EXPECT_EQ(ks.size(), expected);
    for (std::size_t i = 1; i < ks.size(); ++i) {
      EXPECT_TRUE(structural_less(ks[i - 1], ks[i]));
    }
    for (const Kind& k : ks) EXPECT_LE(depth(k), d);
    expected = 1 + expected * expected;
  }
}

TEST(Enumerate, DepthLimit) {
  try {
    oracle::enumerate_monokinds(oracle::kMaxDepth + 1);
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDepthTooLarge);
  }
}

TEST(Enumerate, BySizeGivesCatalanCounts) {
  const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42};
  for (std::size_t n = 0; n < catalan.size(); ++n) {
    EXPECT_EQ(oracle::monokinds_of_size(2 * n + 1).size(), catalan[n]);
    EXPECT_TRUE(oracle::monokinds_of_size(2 * n + 2).empty());
  }
}

TEST(Match, ConsistentBindings) {
  std::map<std::string, Kind> s;
  EXPECT_TRUE(oracle::match(mk("k -> k"), mk("* -> *"), s));
  EXPECT_EQ(s.at("k"), Kind::star());
  s.clear();
  EXPECT_FALSE(oracle::match(mk("k -> k"), mk("* -> * -> *"), s));
  s.clear();
  const Kind u = Kind::arrow(Kind::uvar(UVar{3}), Kind::star());
  EXPECT_TRUE(oracle::match(u, mk("(* -> *) -> *"), s));
  EXPECT_EQ(pretty_kind(s.at("^3")), "* -> *");
  EXPECT_FALSE(oracle::match(mk("forall a. a"), Kind::star(), s));
}

TEST(DeclarativeAccepts, Examples) {
  const Program maybe = h98("data Maybe a = Nothing | Just a");
  EXPECT_TRUE(oracle::declarative_accepts(maybe, {{"Maybe", mk("* -> *")}}));
  EXPECT_FALSE(oracle::declarative_accepts(maybe, {{"Maybe", mk("*")}}));

  const Program app = h98("data App f a = MkApp (f a)");
  EXPECT_TRUE(
      oracle::declarative_accepts(app, {{"App", mk("(* -> *) -> * -> *")}}));
  EXPECT_FALSE(oracle::declarative_accepts(app, {{"App", mk("* -> * -> *")}}));
}

TEST(DeclarativeAccepts, DefaultingPicksTheSmallest) {
  const Program proxy = h98("data Proxy a = MkProxy");
  const oracle::Assignment big{{"Proxy", mk("(* -> *) -> *")}};
  EXPECT_TRUE(oracle::assignment_checks(proxy, big));
  EXPECT_FALSE(oracle::declarative_accepts(proxy, big));
  EXPECT_TRUE(oracle::declarative_accepts(proxy, {{"Proxy", mk("* -> *")}}));
}

TEST(DeclarativeAccepts, GroupsAreStaged) {
  const Program p = h98("data P a = MkP\ndata Q b c = MkQ (P b) (b c)");
  const oracle::Assignment joint{{"P", mk("(* -> *) -> *")},
                                 {"Q", mk("(* -> *) -> * -> *")}};
  EXPECT_TRUE(oracle::assignment_checks(p, joint));
  EXPECT_FALSE(oracle::declarative_accepts(p, joint));
  EXPECT_FALSE(oracle::accepted_assignment(p, 2).has_value());
}

TEST(DeclarativeAccepts, MutualGroup) {
  const Program p = h98("data T a = MkT (S a)\ndata S a = MkS (T a)");
  EXPECT_TRUE(oracle::declarative_accepts(
      p, {{"T", mk("* -> *")}, {"S", mk("* -> *")}}));
  EXPECT_FALSE(oracle::declarative_accepts(
      p, {{"T", mk("(* -> *) -> *")}, {"S", mk("(* -> *) -> *")}}));
  EXPECT_FALSE(oracle::declarative_accepts(p, {{"T", mk("* -> *")}}));
}

TEST(OracleGroups, ReachabilityOrder) {
  using G = std::vector<std::vector<std::string>>;
  EXPECT_EQ(*oracle::oracle_groups(h98("data A = MkA B; data B = MkB")),
            (G{{"B"}, {"A"}}));
  EXPECT_EQ(*oracle::oracle_groups(
                h98("data T a = MkT (S a)\ndata S a = MkS (T a)\ndata U = U")),
            (G{{"T", "S"}, {"U"}}));
  EXPECT_FALSE(oracle::oracle_groups(h98("data T = MkT V")).has_value());
}

TEST(PrincipalCheck, Examples) {
  const Program maybe = h98("data Maybe a = Nothing | Just a");
  EXPECT_FALSE(
      oracle::principal_check(maybe, run_h98(maybe).schemes, 2).has_value());

  const Program app = h98("data App f a = MkApp (f a)");
  const H98Result r = run_h98(app);
  EXPECT_FALSE(oracle::principal_check(app, r.schemes, 2).has_value());

  const Kind k = Kind::uvar(UVar{0});
  const std::vector<TyConKind> corrupted{
      {"App", Kind::arrow(k, Kind::arrow(k, Kind::star()))}};
  auto ce = oracle::principal_check(app, corrupted, 2);
  ASSERT_TRUE(ce.has_value());
  EXPECT_EQ(ce->group, std::vector<std::string>{"App"});
  EXPECT_TRUE(oracle::assignment_checks(app, ce->assignment));
}

TEST(AcceptedAssignment, FindsTheDefaultedKinds) {
  auto a = oracle::accepted_assignment(
      h98("data App f a = MkApp (f a)\ndata T = MkT (App Maybe T)\n"
          "data Maybe a = N | J a"),
      2);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(pretty_kind(a->at("App")), "(* -> *) -> * -> *");
  EXPECT_EQ(pretty_kind(a->at("T")), "*");
  EXPECT_FALSE(oracle::accepted_assignment(h98("data T a = MkT (a a)"), 4));
}

TEST(PolyInstances, InferredKindsHoldAtEveryInstance) {
  for (const char* text :
       {"data App f a = MkApp (f a)", "data Proxy a = MkProxy",
        "sig P :: forall k. k -> *\ndata P a = MkP",
        "data T (f :: k -> *) (a :: k) = MkT (f a)",
        "sig T :: forall k. k -> *\ndata T a = MkT (T Maybe) (T T)\n"
        "data Maybe a = N | J a"}) {
    const Program p = parse_program(text, Mode::kPoly);
    const PolyResult r = run_poly(p);
    EXPECT_FALSE(oracle::check_poly_instances(p, r.kinds, 2).has_value())
        << text;
  }
}

TEST(PolyInstances, OvergeneralKindIsCaught) {
  const Program p = parse_program("data App f a = MkApp (f a)", Mode::kPoly);
  auto bad = oracle::check_poly_instances(
      p, {{"App", mk("forall k j. (k -> *) -> j -> *")}}, 1);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->rfind("App at ", 0), 0u);
}

TEST(OracleBridge, SingleDeclarationFamily) {
  for (const std::string& text : testgen::family_a()) {
    const Program p = h98(text);
    try {
      const H98Result r = run_h98(p);
      oracle::Assignment a;
      for (const TyConKind& tk : r.kinds) a.emplace(tk.name, tk.kind);
      EXPECT_TRUE(oracle::declarative_accepts(p, a)) << text;
      EXPECT_FALSE(oracle::principal_check(p, r.schemes, 2).has_value())
          << text;
    } catch (const KindError&) {
      EXPECT_FALSE(oracle::accepted_assignment(p, 3).has_value()) << text;
    }
  }
}

}  // namespace
}  // namespace kindred
