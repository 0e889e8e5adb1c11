#ifndef KINDRED_UNIFY_HPP
#define KINDRED_UNIFY_HPP

#include <cstddef>
#include <utility>

#include "kindred/context.hpp"
#include "kindred/kind.hpp"
#include "kindred/trace.hpp"

namespace kindred {

/// Instrumentation collected by one top-level unify call. The lexicographic
/// measure (unsolved entries, size of the pending problem) must strictly
/// decrease from every call to each of its recursive calls, and the total
/// number of steps must stay within 4 * (|k1| + |k2| + |ctx|)^2. Both are
/// checked on every call; a breach throws InvariantViolation.
struct UnifyStats {
  std::size_t steps = 0;
  std::size_t bound = 0;
  std::size_t promotions = 0;
};

/// Rewrites `k` so that every unification variable in it sits strictly left
/// of `target`: each offender ^b gets a fresh ^b1 inserted just left of
/// `target`, and ^b is solved to ^b1. Throws ESCAPE_ERROR if `k` mentions a
/// rigid variable bound right of `target`.
Kind promote_in_place(Context& ctx, UVar target, const Kind& k,
                      Trace* trace = nullptr);
std::pair<Kind, Context> promote(Context ctx, UVar target, const Kind& k);

/// Throws OCCURS_CHECK, KIND_MISMATCH or ESCAPE_ERROR. On failure `ctx` is
/// left in an unspecified (but well-formed) state.
void unify_in_place(Context& ctx, const Kind& k1, const Kind& k2,
                    Trace* trace = nullptr, UnifyStats* stats = nullptr);
Context unify(Context ctx, const Kind& k1, const Kind& k2,
              UnifyStats* stats = nullptr);

}  // namespace kindred

#endif  // KINDRED_UNIFY_HPP
