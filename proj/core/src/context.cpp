#include "kindred/context.hpp"

#include <fmt/format.h>

#include <set>

#include "kindred/surface.hpp"

namespace kindred {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

bool same_entry(const Entry& a, const Entry& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const TyConEntry& x) {
            const auto& y = std::get<TyConEntry>(b);
            return x.name == y.name && x.kind == y.kind;
          },
          [&](const TyVarEntry& x) {
            const auto& y = std::get<TyVarEntry>(b);
            return x.name == y.name && x.kind == y.kind;
          },
          [&](const UnsolvedEntry& x) {
            return x.var == std::get<UnsolvedEntry>(b).var;
          },
          [&](const SolvedEntry& x) {
            const auto& y = std::get<SolvedEntry>(b);
            return x.var == y.var && x.solution == y.solution;
          },
          [&](const MarkerEntry& x) {
            return x.tag == std::get<MarkerEntry>(b).tag;
          },
      },
      a);
}

std::optional<UVar> entry_uvar(const Entry& e) {
  if (const auto* u = std::get_if<UnsolvedEntry>(&e)) return u->var;
  if (const auto* s = std::get_if<SolvedEntry>(&e)) return s->var;
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> Context::position_of(UVar v) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entry_uvar(entries_[i]) == v) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Context::position_of_tyvar(
    std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto* tv = std::get_if<TyVarEntry>(&entries_[i]);
    if (tv != nullptr && tv->name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Context::position_of_marker(
    std::string_view tag) const {
  for (std::size_t i = entries_.size(); i-- > 0;) {
    const auto* m = std::get_if<MarkerEntry>(&entries_[i]);
    if (m != nullptr && m->tag == tag) return i;
  }
  return std::nullopt;
}

const Kind* Context::tycon_kind(std::string_view name) const {
  for (const Entry& e : entries_) {
    const auto* tc = std::get_if<TyConEntry>(&e);
    if (tc != nullptr && tc->name == name) return &tc->kind;
  }
  return nullptr;
}

const Kind* Context::tyvar_kind(std::string_view name) const {
  auto pos = position_of_tyvar(name);
  return pos ? &std::get<TyVarEntry>(entries_[*pos]).kind : nullptr;
}

const Kind* Context::solution(UVar v) const {
  for (const Entry& e : entries_) {
    if (const auto* s = std::get_if<SolvedEntry>(&e); s && s->var == v) {
      return &s->solution;
    }
  }
  return nullptr;
}

bool Context::is_unsolved(UVar v) const {
  for (const Entry& e : entries_) {
    if (const auto* u = std::get_if<UnsolvedEntry>(&e); u && u->var == v) {
      return true;
    }
  }
  return false;
}

std::size_t Context::unsolved_count() const {
  std::size_t n = 0;
  for (const Entry& e : entries_) n += std::holds_alternative<UnsolvedEntry>(e);
  return n;
}

UVar Context::allocate() { return UVar{next_id_++}; }

UVar Context::fresh() {
  const UVar v = allocate();
  entries_.push_back(UnsolvedEntry{v});
  return v;
}

UVar Context::fresh_at(std::size_t pos) {
  const UVar v = allocate();
  insert(pos, UnsolvedEntry{v});
  return v;
}

void Context::push(Entry e) {
  if (auto v = entry_uvar(e); v && v->id >= next_id_) next_id_ = v->id + 1;
  entries_.push_back(std::move(e));
}

void Context::insert(std::size_t pos, Entry e) {
  if (pos > entries_.size()) {
    throw InvariantViolation("context insertion past the end");
  }
  if (auto v = entry_uvar(e); v && v->id >= next_id_) next_id_ = v->id + 1;
  entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(pos),
                  std::move(e));
}

void Context::truncate(std::size_t pos) {
  if (pos < entries_.size()) {
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(pos),
                   entries_.end());
  }
}

void Context::set_solution(UVar v, Kind k) {
  for (Entry& e : entries_) {
    if (const auto* u = std::get_if<UnsolvedEntry>(&e); u && u->var == v) {
      e = SolvedEntry{v, std::move(k)};
      return;
    }
  }
  throw InvariantViolation(fmt::format("^{} is not unsolved", v.id));
}

bool operator==(const Context& a, const Context& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (!same_entry(a.entries_[i], b.entries_[i])) return false;
  }
  return true;
}

std::string pretty_entry(const Entry& e) {
  return std::visit(
      Overloaded{
          [](const TyConEntry& x) {
            return x.name + " :: " + pretty_kind(x.kind);
          },
          [](const TyVarEntry& x) {
            return x.name + " :: " + pretty_kind(x.kind);
          },
          [](const UnsolvedEntry& x) { return fmt::format("^{}", x.var.id); },
          [](const SolvedEntry& x) {
            return fmt::format("^{} = {}", x.var.id, pretty_kind(x.solution));
          },
          [](const MarkerEntry& x) { return ">" + x.tag; },
      },
      e);
}

std::string pretty_context(const Context& ctx) {
  std::string out;
  for (const Entry& e : ctx.entries()) {
    if (!out.empty()) out += ", ";
    out += pretty_entry(e);
  }
  return out;
}

Kind apply_ctx(const Context& ctx, const Kind& k) {
  if (!has_uvars(k)) return k;
  return substitute_uvars(k, [&](UVar v) -> std::optional<Kind> {
    auto pos = ctx.position_of(v);
    if (!pos) {
      throw InvariantViolation(
          fmt::format("^{} is not declared in the context", v.id));
    }
    if (const auto* s = std::get_if<SolvedEntry>(&ctx[*pos])) {
      return apply_ctx(ctx, s->solution);
    }
    return std::nullopt;
  });
}

std::pair<UVar, Context> fresh_uvar(Context ctx) {
  const UVar v = ctx.fresh();
  return {v, std::move(ctx)};
}

void solve_uvar_in_place(Context& ctx, UVar v, const Kind& k) {
  auto pos = ctx.position_of(v);
  if (!pos || !ctx.is_unsolved(v)) {
    throw InvariantViolation(fmt::format("^{} is not unsolved", v.id));
  }
  if (mentions_uvar(k, v)) {
    throw KindError(ErrorCode::kOccursViolation,
                    fmt::format("^{} occurs in its own solution {}", v.id,
                                pretty_kind(k)));
  }
  for (UVar u : free_uvars(k)) {
    auto upos = ctx.position_of(u);
    if (!upos || *upos > *pos) {
      throw KindError(ErrorCode::kScopeViolation,
                      fmt::format("solution {} for ^{} mentions ^{} which is "
                                  "not declared to its left",
                                  pretty_kind(k), v.id, u.id));
    }
  }
  for (const std::string& name : free_vars(k)) {
    auto vpos = ctx.position_of_tyvar(name);
    if (!vpos || *vpos > *pos) {
      throw KindError(ErrorCode::kScopeViolation,
                      fmt::format("solution {} for ^{} mentions {} which is "
                                  "not bound to its left",
                                  pretty_kind(k), v.id, name));
    }
  }
  ctx.set_solution(v, k);
}

Context solve_uvar(Context ctx, UVar v, const Kind& k) {
  solve_uvar_in_place(ctx, v, k);
  return ctx;
}

std::optional<Diagnostic> wf_context(const Context& ctx) {
  std::set<std::uint32_t> uvars;
  std::set<std::string> names;
  std::set<std::string> tyvars;

  auto fail = [](std::size_t i, std::string msg) {
    return Diagnostic{ErrorCode::kIllFormedContext, std::nullopt,
                      fmt::format("entry {}: {}", i, msg), {}};
  };
  auto scoped = [&](std::size_t i,
                    const Kind& k) -> std::optional<Diagnostic> {
    for (UVar u : free_uvars(k)) {
      if (!uvars.contains(u.id)) {
        return fail(i, fmt::format("^{} undeclared", u.id));
      }
    }
    for (const std::string& n : free_vars(k)) {
      if (!tyvars.contains(n)) {
        return fail(i, fmt::format("{} unbound", n));
      }
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const Entry& e = ctx[i];
    if (const auto* tc = std::get_if<TyConEntry>(&e)) {
      if (auto d = scoped(i, tc->kind)) return d;
      if (!names.insert(tc->name).second) {
        return fail(i, fmt::format("{} bound twice", tc->name));
      }
    } else if (const auto* tv = std::get_if<TyVarEntry>(&e)) {
      if (auto d = scoped(i, tv->kind)) return d;
      if (!names.insert(tv->name).second) {
        return fail(i, fmt::format("{} bound twice", tv->name));
      }
      tyvars.insert(tv->name);
    } else if (const auto* u = std::get_if<UnsolvedEntry>(&e)) {
      if (!uvars.insert(u->var.id).second) {
        return fail(i, fmt::format("^{} declared twice", u->var.id));
      }
    } else if (const auto* s = std::get_if<SolvedEntry>(&e)) {
      if (auto d = scoped(i, s->solution)) return d;
      if (mentions_uvar(s->solution, s->var)) {
        return fail(i, fmt::format("^{} occurs in its solution", s->var.id));
      }
      if (!uvars.insert(s->var.id).second) {
        return fail(i, fmt::format("^{} declared twice", s->var.id));
      }
    }
  }
  return std::nullopt;
}

std::vector<UVar> default_from(Context& ctx, std::size_t from) {
  std::vector<UVar> solved;
  for (std::size_t i = from; i < ctx.size(); ++i) {
    if (const auto* u = std::get_if<UnsolvedEntry>(&ctx[i])) {
      solved.push_back(u->var);
    }
  }
  for (UVar v : solved) ctx.set_solution(v, Kind::star());
  return solved;
}

Context default_all(Context ctx) {
  default_from(ctx, 0);
  return ctx;
}

}  // namespace kindred
