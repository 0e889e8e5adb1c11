#ifndef KINDRED_H98_HPP
#define KINDRED_H98_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kindred/context.hpp"
#include "kindred/deps.hpp"
#include "kindred/surface.hpp"
#include "kindred/trace.hpp"

namespace kindred {

struct TyConKind {
  std::string name;
  Kind kind;

  friend bool operator==(const TyConKind&, const TyConKind&) = default;
};

/// Type variables in scope and their kinds, innermost last.
class Scope {
 public:
  void bind(std::string name, Kind kind);
  const Kind* lookup(std::string_view name) const;

 private:
  std::vector<std::pair<std::string, Kind>> vars_;
};

struct KindingOptions {
  Mode mode = Mode::kH98;
  Trace* trace = nullptr;
  /// Declaration name attached to diagnostics.
  std::string_view decl;
  /// Kind variables written in the declaration header, by source name.
  const std::map<std::string, Kind>* kind_vars = nullptr;
};

/// Infers the kind of `t`, refining `ctx`. In poly mode the kinds of
/// variables and constructors are instantiated at each use.
Kind infer_type_kind(Context& ctx, const Scope& scope, const SurfaceType& t,
                     const KindingOptions& opts = {});

/// Checks `t` against `expected`, reporting mismatches at `t`'s position.
void check_type_kind(Context& ctx, const Scope& scope, const SurfaceType& t,
                     const Kind& expected, const KindingOptions& opts = {});

/// Allocates provisional kinds for every member and checks all constructor
/// arguments against `*`. Unsolved variables are left for the caller.
Context infer_group_h98(Context ctx, const Group& g, const Program& p,
                        Trace* trace = nullptr);

/// Variables solved by defaulting one group, with their new solutions.
struct GroupDefaulting {
  std::vector<std::string> tycons;
  std::vector<std::pair<UVar, Kind>> solved;
};

struct H98Result {
  /// Final closed kinds, source order.
  std::vector<TyConKind> kinds;
  /// Kinds just before defaulting, with unification variables, source order.
  std::vector<TyConKind> schemes;
  std::vector<GroupDefaulting> defaults;

  const Kind* kind_of(std::string_view name) const;
};

/// Throws KindError at the first failure.
H98Result run_h98(const Program& p, Trace* trace = nullptr);

}  // namespace kindred

#endif  // KINDRED_H98_HPP
