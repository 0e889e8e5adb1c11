#ifndef KINDRED_POLY_HPP
#define KINDRED_POLY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kindred/context.hpp"
#include "kindred/h98.hpp"
#include "kindred/surface.hpp"
#include "kindred/trace.hpp"

namespace kindred {

/// A binder of an elaborated declaration. Invisible binders are the
/// quantified kind variables, printed `@(k1 :: *)`.
struct ElabBinder {
  std::string name;
  Kind kind;
  bool invisible = false;

  friend bool operator==(const ElabBinder&, const ElabBinder&) = default;
};

struct ElabArg {
  SurfaceType type;
  Kind kind;

  friend bool operator==(const ElabArg&, const ElabArg&) = default;
};

struct ElabCon {
  std::string name;
  std::vector<ElabArg> args;

  friend bool operator==(const ElabCon&, const ElabCon&) = default;
};

/// A declaration with every binder and constructor argument annotated.
/// `binders` is read off the spine of `tycon_kind`, so each binder kind only
/// mentions earlier invisible binders.
struct ElabDecl {
  std::string name;
  std::vector<ElabBinder> binders;
  Kind tycon_kind;
  std::vector<ElabCon> ctors;

  friend bool operator==(const ElabDecl&, const ElabDecl&) = default;
};

/// `data T @(k1 :: *) (a :: k1) = MkT (a :: *)`
std::string pretty_elab(const ElabDecl& d);

/// Drops every annotation, recovering a plain declaration.
DataDecl erase(const ElabDecl& d);

/// The erased declarations, each under a signature holding its kind.
Program elaborated_program(const std::vector<ElabDecl>& decls);

/// Replaces leading Foralls with fresh unification variables appended to
/// the context, in binder order.
Kind instantiate_in_place(Context& ctx, const Kind& k);
std::pair<Kind, Context> instantiate(Context ctx, const Kind& k);

/// Checks that every unsolved variable reachable from `roots` (and every
/// rigid variable free in them) was introduced after the marker `marker`.
/// Unification variables range over kinds of sort `*` only, so the
/// telescope-ordering condition among the quantified variables always holds.
std::optional<Diagnostic> quantification_check(const Context& ctx,
                                               std::string_view marker,
                                               const std::vector<Kind>& roots);

/// Quantifies the unsolved variables of `apply_ctx(ctx, k)` introduced after
/// `marker`, and rigid variables bound there, in first-occurrence order.
/// The result is alpha-canonical (binders k1, k2, ...).
Kind generalize(const Context& ctx, std::string_view marker, const Kind& k);

/// Checks `d` against its signature. Binds `name :: sig` first when the
/// context does not already hold it.
Context check_signature(Context ctx, const std::string& name, const Kind& sig,
                        const DataDecl& d);

struct PolyResult {
  std::vector<TyConKind> kinds;  // source order
  std::vector<ElabDecl> elab;    // source order

  const Kind* kind_of(std::string_view name) const;
};

PolyResult run_poly(const Program& p, Trace* trace = nullptr);

/// Whether `mono` is obtained from `poly` by substituting `*` for every
/// quantified variable.
bool is_star_instance(const Kind& poly, const Kind& mono);

}  // namespace kindred

#endif  // KINDRED_POLY_HPP
