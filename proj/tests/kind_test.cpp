#include <gtest/gtest.h>

#include "kindred/kind.hpp"
#include "kindred/surface.hpp"

namespace kindred {
namespace {

Kind star() { return Kind::star(); }
Kind arr(Kind a, Kind b) { return Kind::arrow(std::move(a), std::move(b)); }
Kind kv(const char* n) { return Kind::var(n); }
Kind uv(std::uint32_t id) { return Kind::uvar(UVar{id}); }

TEST(Kind, PrettyPrintsRightAssociativeArrows) {
  EXPECT_EQ(pretty_kind(star()), "*");
  EXPECT_EQ(pretty_kind(arr(star(), arr(star(), star()))), "* -> * -> *");
  EXPECT_EQ(pretty_kind(arr(arr(star(), star()), star())), "(* -> *) -> *");
}

TEST(Kind, PrettyPrintsQuantifiers) {
  const Kind k = Kind::forall(
      "k", arr(arr(kv("k"), star()), arr(kv("k"), star())));
  EXPECT_EQ(pretty_kind(k), "forall k. (k -> *) -> k -> *");
  const Kind two = Kind::forall("a", Kind::forall("b", arr(kv("a"), kv("b"))));
  EXPECT_EQ(pretty_kind(two), "forall a b. a -> b");
  EXPECT_EQ(pretty_kind(arr(uv(3), star())), "^3 -> *");
}

TEST(Kind, AccessorsRejectTheWrongShape) {
  EXPECT_THROW(star().dom(), InvariantViolation);
  EXPECT_THROW(kv("k").body(), InvariantViolation);
  EXPECT_THROW(arr(star(), star()).name(), InvariantViolation);
  EXPECT_THROW(star().uvar_id(), InvariantViolation);
}

TEST(Kind, SizeAndDepth) {
  const Kind k = arr(arr(star(), star()), arr(star(), star()));
  EXPECT_EQ(k.size(), 7u);
  EXPECT_EQ(depth(k), 2);
  EXPECT_EQ(depth(star()), 0);
  EXPECT_EQ(depth(Kind::forall("k", arr(kv("k"), star()))), 1);
}

TEST(Kind, FreeVariablesInFirstOccurrenceOrder) {
  const Kind k = arr(arr(uv(4), uv(1)), arr(uv(4), kv("b")));
  EXPECT_EQ(free_uvars(k), (std::vector<UVar>{UVar{4}, UVar{1}}));
  EXPECT_TRUE(mentions_uvar(k, UVar{1}));
  EXPECT_FALSE(mentions_uvar(k, UVar{2}));
  const Kind q = Kind::forall("a", arr(kv("a"), arr(kv("c"), kv("a"))));
  EXPECT_EQ(free_vars(q), std::vector<std::string>{"c"});
  EXPECT_FALSE(is_closed(q));
  EXPECT_TRUE(is_closed(Kind::forall("a", kv("a"))));
  EXPECT_FALSE(is_closed(uv(0)));
}

TEST(Kind, SubstitutionRespectsBinders) {
  const Kind q = Kind::forall("a", arr(kv("a"), kv("b")));
  const Kind r = substitute_vars(q, {{"a", star()}, {"b", star()}});
  EXPECT_EQ(pretty_kind(r), "forall a. a -> *");
  const Kind s = substitute_uvars(arr(uv(0), uv(1)), [](UVar v) {
    return v.id == 0 ? std::optional<Kind>(star()) : std::nullopt;
  });
  EXPECT_EQ(pretty_kind(s), "* -> ^1");
}

TEST(Kind, CanonicalizeRenamesBindersInPreorder) {
  const Kind k = Kind::forall(
      "x", Kind::forall("y", arr(kv("y"), arr(kv("x"), star()))));
  EXPECT_EQ(pretty_kind(canonicalize(k)), "forall k1 k2. k2 -> k1 -> *");
  EXPECT_EQ(canonicalize(canonicalize(k)), canonicalize(k));
}

TEST(Kind, AlphaEquivalence) {
  const Kind a = Kind::forall("x", arr(kv("x"), star()));
  const Kind b = Kind::forall("y", arr(kv("y"), star()));
  const Kind c = Kind::forall("y", arr(kv("z"), star()));
  EXPECT_TRUE(alpha_equivalent(a, b));
  EXPECT_FALSE(alpha_equivalent(a, c));
  EXPECT_FALSE(a == b);
  EXPECT_EQ(canonicalize(a), canonicalize(b));
}

TEST(Kind, StructuralOrderIsBySizeFirst) {
  EXPECT_TRUE(structural_less(star(), arr(star(), star())));
  EXPECT_FALSE(structural_less(star(), star()));
  const Kind l = arr(arr(star(), star()), star());
  const Kind r = arr(star(), arr(star(), star()));
  EXPECT_NE(structural_less(l, r), structural_less(r, l));
}

TEST(Kind, LeadingBindersAndStrip) {
  const Kind k = Kind::forall("a", Kind::forall("b", arr(kv("a"), kv("b"))));
  EXPECT_EQ(leading_binders(k), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(pretty_kind(strip_foralls(k)), "a -> b");
  EXPECT_TRUE(contains_forall(arr(star(), k)));
  EXPECT_FALSE(contains_forall(arr(star(), star())));
}

}  // namespace
}  // namespace kindred
