#ifndef KINDRED_KIND_HPP
#define KINDRED_KIND_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kindred {

/// Identity of a unification variable. Ids come from a per-run monotone
/// counter and are never reused.
struct UVar {
  std::uint32_t id = 0;

  friend auto operator<=>(const UVar&, const UVar&) = default;
};

/// Kinds for both systems share one immutable representation:
///
///   Star | Arrow(dom, cod) | Var(name) | UVar(id) | Forall(binder, body)
///
/// Haskell98 kinds never contain Var or Forall. Copies are cheap: nodes are
/// shared and never mutated.
class Kind {
 public:
  enum class Tag : std::uint8_t { kStar, kArrow, kVar, kUVar, kForall };

  Kind();

  static Kind star();
  static Kind arrow(Kind dom, Kind cod);
  static Kind var(std::string name);
  static Kind uvar(UVar v);
  static Kind forall(std::string binder, Kind body);

  /// `k1 -> k2 -> ... -> result`
  static Kind arrows(const std::vector<Kind>& doms, Kind result);

  Tag tag() const;
  bool is_star() const { return tag() == Tag::kStar; }
  bool is_arrow() const { return tag() == Tag::kArrow; }
  bool is_var() const { return tag() == Tag::kVar; }
  bool is_uvar() const { return tag() == Tag::kUVar; }
  bool is_forall() const { return tag() == Tag::kForall; }

  const Kind& dom() const;
  const Kind& cod() const;
  /// Variable name for Var, binder name for Forall.
  const std::string& name() const;
  UVar uvar_id() const;
  const Kind& body() const;

  /// Node count.
  std::size_t size() const;

  /// Structural equality; bound names must match exactly.
  friend bool operator==(const Kind& a, const Kind& b);

 private:
  struct Node;
  explicit Kind(std::shared_ptr<const Node> node);
  static const std::shared_ptr<const Node>& star_node();
  std::shared_ptr<const Node> node_;
};

/// Arrow-nesting depth: `*` and variables are 0, an arrow is one more than
/// its deeper side. Foralls are transparent.
int depth(const Kind& k);

/// Unification variables in left-to-right preorder, first occurrence only.
std::vector<UVar> free_uvars(const Kind& k);
bool mentions_uvar(const Kind& k, UVar v);

/// Free (unbound by an enclosing Forall) variable names, first occurrence.
std::vector<std::string> free_vars(const Kind& k);

bool contains_forall(const Kind& k);
bool has_uvars(const Kind& k);

/// No unification variables and no free variables.
bool is_closed(const Kind& k);

/// Replace unification variables for which `lookup` yields a kind. The
/// replacement is not revisited.
Kind substitute_uvars(const Kind& k,
                      const std::function<std::optional<Kind>(UVar)>& lookup);

/// Replace free occurrences of the named variables. Replacements must not
/// mention any binder they are pushed under; callers use fresh names.
Kind substitute_vars(const Kind& k, const std::map<std::string, Kind>& subst);

/// Peel leading Foralls.
std::vector<std::string> leading_binders(const Kind& k);
Kind strip_foralls(const Kind& k);

/// Renames every Forall binder to k1, k2, ... in preorder. Free variables
/// keep their names, so closed kinds become alpha-canonical.
Kind canonicalize(const Kind& k);

/// Equality up to consistent renaming of bound variables.
bool alpha_equivalent(const Kind& a, const Kind& b);

/// Total order used for deterministic enumeration: by size, then Star before
/// Arrow, then domain, then codomain.
bool structural_less(const Kind& a, const Kind& b);

}  // namespace kindred

#endif  // KINDRED_KIND_HPP
