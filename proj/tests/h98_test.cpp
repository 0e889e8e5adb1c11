#include <gtest/gtest.h>

#include <sstream>

#include "kindred/h98.hpp"

namespace kindred {
namespace {

Kind star() { return Kind::star(); }
Kind uv(UVar v) { return Kind::uvar(v); }

std::string kinds(std::string_view text) {
  const H98Result r = run_h98(parse_program(text, Mode::kH98));
  std::string out;
  for (const TyConKind& tk : r.kinds) {
    out += tk.name + " :: " + pretty_kind(tk.kind) + "\n";
  }
  return out;
}

KindError h98_error(std::string_view text) {
  try {
    run_h98(parse_program(text, Mode::kH98));
  } catch (const KindError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return KindError(ErrorCode::kParseError, "unreachable");
}

TEST(InferTypeKind, Variable) {
  Context c;
  const UVar a = c.fresh();
  Scope s;
  s.bind("a", uv(a));
  const Context before = c;
  EXPECT_EQ(infer_type_kind(c, s, parse_type("a", Mode::kH98)), uv(a));
  EXPECT_EQ(c, before);
}

TEST(InferTypeKind, Application) {
  Context c;
  const UVar f = c.fresh();
  const UVar a = c.fresh();
  Scope s;
  s.bind("f", uv(f));
  s.bind("a", uv(a));
  const Kind r = infer_type_kind(c, s, parse_type("f a", Mode::kH98));
  ASSERT_TRUE(r.is_uvar());
  EXPECT_EQ(apply_ctx(c, uv(f)), Kind::arrow(apply_ctx(c, uv(a)), apply_ctx(c, r)));
  EXPECT_FALSE(wf_context(c).has_value());
}

TEST(InferTypeKind, SelfApplication) {
  Context c;
  Scope s;
  s.bind("a", uv(c.fresh()));
  try {
    infer_type_kind(c, s, parse_type("a a", Mode::kH98));
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOccursCheck);
  }
}

TEST(InferTypeKind, UnboundNames) {
  Context c;
  Scope s;
  try {
    infer_type_kind(c, s, parse_type("b", Mode::kH98));
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnboundVar);
  }
  try {
    infer_type_kind(c, s, parse_type("U", Mode::kH98));
    FAIL();
  } catch (const KindError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnboundTyCon);
  }
}

TEST(InferTypeKind, ArrowsAreStar) {
  Context c;
  Scope s;
  const UVar a = c.fresh();
  s.bind("a", uv(a));
  EXPECT_EQ(infer_type_kind(c, s, parse_type("a -> a", Mode::kH98)), star());
  EXPECT_EQ(apply_ctx(c, uv(a)), star());
}

TEST(InferGroup, UnconstrainedParameterStaysOpen) {
  const Program p = parse_program("data Maybe a = Nothing | Just a\n"
                                  "data Proxy a = MkProxy",
                                  Mode::kH98);
  const Context c = infer_group_h98(Context{}, Group{{1}, 0}, p);
  EXPECT_EQ(pretty_context(c), "^0, Proxy :: ^0 -> *");
  const Context m = infer_group_h98(Context{}, Group{{0}, 0}, p);
  EXPECT_EQ(pretty_kind(apply_ctx(m, *m.tycon_kind("Maybe"))), "* -> *");
}

TEST(InferGroup, RecursiveUseIsConsistent) {
  const Program p =
      parse_program("data List a = Nil | Cons a (List a)", Mode::kH98);
  const Context c = infer_group_h98(Context{}, Group{{0}, 0}, p);
  EXPECT_EQ(pretty_kind(apply_ctx(c, *c.tycon_kind("List"))), "* -> *");
}

TEST(InferGroup, MutualGroupSharesConstraints) {
  const Program p =
      parse_program("data T a = MkT (S a)\ndata S a = MkS (T a)", Mode::kH98);
  const Context c = infer_group_h98(Context{}, Group{{0, 1}, 0}, p);
  const Kind t = apply_ctx(c, *c.tycon_kind("T"));
  const Kind s = apply_ctx(c, *c.tycon_kind("S"));
  EXPECT_EQ(t, s);
  ASSERT_TRUE(t.is_arrow());
  EXPECT_TRUE(t.dom().is_uvar());
  EXPECT_TRUE(c.is_unsolved(t.dom().uvar_id()));
}

TEST(RunH98, Examples) {
  EXPECT_EQ(kinds("data Maybe a = Nothing | Just a"), "Maybe :: * -> *\n");
  EXPECT_EQ(kinds("data App f a = MkApp (f a)"),
            "App :: (* -> *) -> * -> *\n");
  EXPECT_EQ(kinds("data Proxy a = MkProxy"), "Proxy :: * -> *\n");
  EXPECT_EQ(kinds("data Void"), "Void :: *\n");
  EXPECT_EQ(kinds("data Fix f = In (f (Fix f))"), "Fix :: (* -> *) -> *\n");
  EXPECT_EQ(kinds("data Rose a = Node a (List (Rose a))\n"
                  "data List a = Nil | Cons a (List a)"),
            "Rose :: * -> *\nList :: * -> *\n");
  EXPECT_EQ(kinds("data F a b = MkF (a -> b)"), "F :: * -> * -> *\n");
}

TEST(RunH98, SelfApplicationNamesTheDeclaration) {
  const KindError e = h98_error("data T a = MkT (a a)");
  EXPECT_EQ(e.code(), ErrorCode::kOccursCheck);
  EXPECT_EQ(e.diagnostic().decl, "T");
  ASSERT_TRUE(e.diagnostic().pos.has_value());
  EXPECT_EQ(e.diagnostic().pos->line, 1);
  EXPECT_EQ(e.diagnostic().render("t.dat").rfind("error[OCCURS_CHECK] t.dat:1:", 0),
            0u);
}

TEST(RunH98, SelfReferenceAsArgument) {
  // F :: k -> * with f :: k, and f F forces k = (k -> *) -> r.
  EXPECT_EQ(h98_error("data F f = MkF (f F)").code(), ErrorCode::kOccursCheck);
}

TEST(RunH98, DefaultingIsPerGroup) {
  // P is defaulted to * -> * before Q is inferred.
  EXPECT_EQ(h98_error("data P a = MkP\ndata Q b c = MkQ (P b) (b c)").code(),
            ErrorCode::kKindMismatch);
  EXPECT_EQ(kinds("data P a = MkP\ndata Q b = MkQ (b P)"),
            "P :: * -> *\nQ :: ((* -> *) -> *) -> *\n");
}

TEST(RunH98, Errors) {
  EXPECT_EQ(h98_error("data T = MkT (U T)").code(), ErrorCode::kUnboundTyCon);
  EXPECT_EQ(h98_error("data T = MkT b").code(), ErrorCode::kUnboundVar);
  EXPECT_EQ(h98_error("data T f = MkT (f -> f T)").code(),
            ErrorCode::kKindMismatch);
  EXPECT_EQ(h98_error("data T = MkT (T T)").code(), ErrorCode::kKindMismatch);
}

TEST(RunH98, SchemesAndDefaults) {
  const H98Result r = run_h98(parse_program(
      "data App f a = MkApp (f a)\ndata Maybe a = Nothing | Just a",
      Mode::kH98));
  ASSERT_EQ(r.schemes.size(), 2u);
  const Kind& app = r.schemes[0].kind;
  ASSERT_TRUE(app.is_arrow() && app.dom().is_arrow());
  EXPECT_TRUE(app.dom().dom().is_uvar());
  EXPECT_EQ(app.dom().dom(), app.cod().dom());
  EXPECT_EQ(pretty_kind(r.schemes[1].kind), "* -> *");
  ASSERT_EQ(r.defaults.size(), 2u);
  for (const GroupDefaulting& g : r.defaults) {
    for (const auto& [v, k] : g.solved) EXPECT_EQ(k, star());
  }
  EXPECT_EQ(r.defaults[0].solved.size(), 1u);
  EXPECT_TRUE(r.defaults[1].solved.empty());
  EXPECT_EQ(pretty_kind(*r.kind_of("App")), "(* -> *) -> * -> *");
  EXPECT_EQ(r.kind_of("Nope"), nullptr);
}

TEST(RunH98, TraceIsDeterministic) {
  const Program p = parse_program(
      "data App f a = MkApp (f a)\ndata T = MkT (App Maybe T)\n"
      "data Maybe a = Nothing | Just a",
      Mode::kH98);
  std::ostringstream one;
  std::ostringstream two;
  Trace t1(one);
  Trace t2(two);
  run_h98(p, &t1);
  run_h98(p, &t2);
  EXPECT_EQ(one.str(), two.str());
  EXPECT_NE(one.str().find("STEP 1: PUSH group App"), std::string::npos)
      << one.str();
  EXPECT_NE(one.str().find("DEFAULT"), std::string::npos);
}

}  // namespace
}  // namespace kindred
