#ifndef KINDRED_CONTEXT_HPP
#define KINDRED_CONTEXT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kindred/diagnostic.hpp"
#include "kindred/kind.hpp"

namespace kindred {

struct TyConEntry {
  std::string name;
  Kind kind;
};

/// A rigid variable. Kind variables (`k` in `(a :: k)`) are TyVar entries of
/// kind `*` and are referenced from kinds as Kind::var.
struct TyVarEntry {
  std::string name;
  Kind kind;
};

struct UnsolvedEntry {
  UVar var;
};

struct SolvedEntry {
  UVar var;
  Kind solution;
};

/// Names the inference phase that pushed it.
struct MarkerEntry {
  std::string tag;
};

using Entry =
    std::variant<TyConEntry, TyVarEntry, UnsolvedEntry, SolvedEntry, MarkerEntry>;

/// The ordered algorithmic context. An entry may only mention variables
/// introduced to its left. Positions are indices into entries().
class Context {
 public:
  Context() = default;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> position_of(UVar v) const;
  std::optional<std::size_t> position_of_tyvar(std::string_view name) const;
  std::optional<std::size_t> position_of_marker(std::string_view tag) const;

  const Kind* tycon_kind(std::string_view name) const;
  const Kind* tyvar_kind(std::string_view name) const;
  /// Null when `v` is unsolved or undeclared.
  const Kind* solution(UVar v) const;
  bool is_unsolved(UVar v) const;
  std::size_t unsolved_count() const;

  /// Allocates the next id without adding an entry.
  UVar allocate();
  /// Appends a fresh Unsolved entry.
  UVar fresh();
  /// Inserts a fresh Unsolved entry at `pos`, shifting later entries right.
  UVar fresh_at(std::size_t pos);

  void push(Entry e);
  void insert(std::size_t pos, Entry e);
  /// Drops every entry at or after `pos`. Ids stay reserved.
  void truncate(std::size_t pos);
  /// Replaces Unsolved(v) with Solved(v, k) without any checks.
  void set_solution(UVar v, Kind k);

  std::uint32_t next_id() const { return next_id_; }

  friend bool operator==(const Context& a, const Context& b);

 private:
  std::vector<Entry> entries_;
  std::uint32_t next_id_ = 0;
};

std::string pretty_entry(const Entry& e);
/// Entries left to right, separated by ", ".
std::string pretty_context(const Context& ctx);

/// Substitutes solved unification variables until none remain.
/// Throws InvariantViolation if `k` mentions an undeclared variable.
Kind apply_ctx(const Context& ctx, const Kind& k);

std::pair<UVar, Context> fresh_uvar(Context ctx);

/// Throws OCCURS_VIOLATION if `v` is free in `k`, SCOPE_VIOLATION if `k`
/// mentions an entry at or right of `v`.
Context solve_uvar(Context ctx, UVar v, const Kind& k);
void solve_uvar_in_place(Context& ctx, UVar v, const Kind& k);

/// First violated well-formedness condition, or nullopt.
std::optional<Diagnostic> wf_context(const Context& ctx);

/// Solves every Unsolved entry at or after `from` to `*`. Returns the
/// variables it solved, in context order.
std::vector<UVar> default_from(Context& ctx, std::size_t from);
Context default_all(Context ctx);

}  // namespace kindred

#endif  // KINDRED_CONTEXT_HPP
