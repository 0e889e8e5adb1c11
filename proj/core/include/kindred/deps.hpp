#ifndef KINDRED_DEPS_HPP
#define KINDRED_DEPS_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "kindred/surface.hpp"

namespace kindred {

/// A strongly connected component of mutually recursive declarations.
struct Group {
  /// Declaration indices, ascending (source order).
  std::vector<std::size_t> members;
  /// Index in the emitted order; every dependency sits at a smaller one.
  std::size_t position = 0;

  friend bool operator==(const Group&, const Group&) = default;
};

enum class Grouping {
  /// Every reference is an edge.
  kPlain,
  /// References to declarations that carry a kind signature are not edges:
  /// their kinds are known before any group is inferred.
  kSignaturesBreakCycles,
};

/// Declared type constructors referenced by `d`'s constructor arguments.
/// Throws UNBOUND_TYCON at the first undeclared reference.
std::set<std::string> dependencies(const DataDecl& d, const Program& p);

/// SCCs of the dependency graph, dependencies first. Among groups that are
/// ready at the same time the one with the smallest member index goes first.
std::vector<Group> group_topo(const Program& p,
                              Grouping grouping = Grouping::kPlain);

}  // namespace kindred

#endif  // KINDRED_DEPS_HPP
