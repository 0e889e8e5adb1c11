#ifndef KINDRED_ORACLE_HPP
#define KINDRED_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kindred/h98.hpp"
#include "kindred/kind.hpp"
#include "kindred/surface.hpp"

// Brute-force declarative checker. Shares only the Kind and Program data
// types with the inference engine: no contexts, no unification.
namespace kindred::oracle {

inline constexpr int kMaxDepth = 4;

using Assignment = std::map<std::string, Kind>;

/// Closed monokinds of arrow depth <= depth, ordered by structural_less.
/// count(0) = 1, count(d) = 1 + count(d - 1)^2. Throws DEPTH_TOO_LARGE
/// above kMaxDepth.
std::vector<Kind> enumerate_monokinds(int depth);

/// Closed monokinds of exactly `size` nodes, ordered by structural_less.
std::vector<Kind> monokinds_of_size(std::size_t size);

/// Whether every constructor argument kinds to `*` with each tycon at its
/// assigned kind and each parameter at the kind read off its spine. No
/// defaulting is involved; every tycon is checked at once.
bool assignment_checks(const Program& p, const Assignment& assign);

/// Declaration groups, computed independently of the engine: mutual
/// reachability over constructor-argument references, dependencies first.
/// Nullopt when a reference is undeclared.
std::optional<std::vector<std::vector<std::string>>> oracle_groups(
    const Program& p);

/// The Haskell98 reading: groups are checked dependencies first, each with
/// earlier groups fixed at their chosen kinds, and each group takes its
/// unique accepted assignment of minimum total size (defaulting). True iff
/// `assign` is exactly that assignment.
bool declarative_accepts(const Program& p, const Assignment& assign);

/// Group by group as above, but every tycon kind is drawn from
/// enumerate_monokinds(depth); within a group the minimum accepted
/// candidate is kept. Nullopt when some group has no accepted candidate.
std::optional<Assignment> accepted_assignment(const Program& p, int depth);

struct Counterexample {
  std::vector<std::string> group;
  Assignment assignment;
};

/// For each group, with earlier groups at their minimum accepted kinds,
/// every accepted assignment whose parameter kinds come from
/// enumerate_monokinds(depth) must be an instance of `scheme`: each UVar
/// matched to one closed subtree, consistently across the group. Groups
/// after one without any accepted candidate are not examined.
std::optional<Counterexample> principal_check(
    const Program& p, const std::vector<TyConKind>& scheme, int depth);

/// Each tycon at each closed instance of its kind (quantifiers drawn from
/// enumerate_monokinds(depth)) has well-kinded constructors, with every
/// tycon in scope at all of its instances. Returns a description of the
/// first failing instance.
std::optional<std::string> check_poly_instances(
    const Program& p, const std::vector<TyConKind>& kinds, int depth);

/// Binds the variables and UVars of `pattern` so that it equals `closed`.
/// Quantified patterns never match.
bool match(const Kind& pattern, const Kind& closed,
           std::map<std::string, Kind>& subst);

}  // namespace kindred::oracle

#endif  // KINDRED_ORACLE_HPP
