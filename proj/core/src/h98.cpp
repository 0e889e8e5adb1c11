#include "kindred/h98.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "kindred/poly.hpp"
#include "kindred/unify.hpp"

namespace kindred {

void Scope::bind(std::string name, Kind kind) {
  vars_.emplace_back(std::move(name), std::move(kind));
}

const Kind* Scope::lookup(std::string_view name) const {
  for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

namespace {

Kind resolve_kind_vars(const Kind& k, const KindingOptions& opts,
                       SourcePos pos) {
  std::map<std::string, Kind> subst;
  for (const std::string& name : free_vars(k)) {
    const Kind* found = nullptr;
    if (opts.kind_vars != nullptr) {
      if (auto it = opts.kind_vars->find(name); it != opts.kind_vars->end()) {
        found = &it->second;
      }
    }
    if (found == nullptr) {
      throw KindError(ErrorCode::kUnboundVar,
                      fmt::format("kind variable {} is not bound in the "
                                  "declaration header",
                                  name),
                      pos);
    }
    subst.emplace(name, *found);
  }
  return substitute_vars(k, subst);
}

void unify_at(Context& ctx, const Kind& a, const Kind& b, const SurfaceType& t,
              const KindingOptions& opts) {
  try {
    unify_in_place(ctx, a, b, opts.trace);
  } catch (KindError& e) {
    e.locate(t.pos(), opts.decl);
    throw;
  }
}

std::string group_tag(const Group& g, const Program& p) {
  std::string tag = "group ";
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    if (i > 0) tag += ',';
    tag += p.decls[g.members[i]].name;
  }
  return tag;
}

void infer_group_into(Context& ctx, const Group& g, const Program& p,
                      Trace* trace) {
  std::vector<Scope> scopes(g.members.size());
  for (std::size_t m = 0; m < g.members.size(); ++m) {
    const DataDecl& d = p.decls[g.members[m]];
    std::vector<Kind> params;
    for (const Param& prm : d.params) {
      const UVar v = ctx.fresh();
      params.push_back(Kind::uvar(v));
      scopes[m].bind(prm.name, Kind::uvar(v));
    }
    ctx.push(TyConEntry{d.name, Kind::arrows(params, Kind::star())});
    if (trace != nullptr) trace->step("ALLOC " + d.name, ctx);
  }

  for (std::size_t m = 0; m < g.members.size(); ++m) {
    const DataDecl& d = p.decls[g.members[m]];
    KindingOptions opts{Mode::kH98, trace, d.name, nullptr};
    for (const DataCon& c : d.ctors) {
      for (const SurfaceType& arg : c.args) {
        check_type_kind(ctx, scopes[m], arg, Kind::star(), opts);
      }
    }
  }
}

}  // namespace

Kind infer_type_kind(Context& ctx, const Scope& scope, const SurfaceType& t,
                     const KindingOptions& opts) {
  using Tag = SurfaceType::Tag;
  const bool poly = opts.mode == Mode::kPoly;
  switch (t.tag()) {
    case Tag::kVar: {
      const Kind* k = scope.lookup(t.name());
      if (k == nullptr) {
        throw KindError(Diagnostic{ErrorCode::kUnboundVar, t.pos(),
                                   fmt::format("type variable {} is not in "
                                               "scope",
                                               t.name()),
                                   std::string(opts.decl)});
      }
      return poly ? instantiate_in_place(ctx, *k) : *k;
    }
    case Tag::kCon: {
      const Kind* k = ctx.tycon_kind(t.name());
      if (k == nullptr) {
        throw KindError(Diagnostic{ErrorCode::kUnboundTyCon, t.pos(),
                                   fmt::format("type constructor {} is not in "
                                               "scope",
                                               t.name()),
                                   std::string(opts.decl)});
      }
      return poly ? instantiate_in_place(ctx, *k) : *k;
    }
    case Tag::kArrow:
      check_type_kind(ctx, scope, t.dom(), Kind::star(), opts);
      check_type_kind(ctx, scope, t.cod(), Kind::star(), opts);
      return Kind::star();
    case Tag::kApp: {
      const Kind fun = infer_type_kind(ctx, scope, t.fun(), opts);
      const Kind arg = infer_type_kind(ctx, scope, t.arg(), opts);
      const UVar result = ctx.fresh();
      if (opts.trace != nullptr) {
        opts.trace->step(fmt::format("FRESH ^{}", result.id), ctx);
      }
      unify_at(ctx, fun, Kind::arrow(arg, Kind::uvar(result)), t, opts);
      return Kind::uvar(result);
    }
    case Tag::kForall: {
      if (!poly) {
        throw InvariantViolation("forall type in h98 mode");
      }
      Scope inner = scope;
      const UVar v = ctx.fresh();
      inner.bind(t.name(), Kind::uvar(v));
      check_type_kind(ctx, inner, t.body(), Kind::star(), opts);
      return Kind::star();
    }
    case Tag::kAnnot: {
      if (!poly) {
        throw InvariantViolation("kind annotation in h98 mode");
      }
      const Kind expected = resolve_kind_vars(t.annotation(), opts, t.pos());
      check_type_kind(ctx, scope, t.inner(), expected, opts);
      return expected;
    }
  }
  throw InvariantViolation("unknown type node");
}

void check_type_kind(Context& ctx, const Scope& scope, const SurfaceType& t,
                     const Kind& expected, const KindingOptions& opts) {
  const Kind actual = infer_type_kind(ctx, scope, t, opts);
  unify_at(ctx, actual, expected, t, opts);
}

Context infer_group_h98(Context ctx, const Group& g, const Program& p,
                        Trace* trace) {
  infer_group_into(ctx, g, p, trace);
  return ctx;
}

const Kind* H98Result::kind_of(std::string_view name) const {
  for (const TyConKind& tk : kinds) {
    if (tk.name == name) return &tk.kind;
  }
  return nullptr;
}

H98Result run_h98(const Program& p, Trace* trace) {
  H98Result result;
  std::map<std::string, Kind> finals;
  std::map<std::string, Kind> schemes;

  Context ctx;
  for (const Group& g : group_topo(p)) {
    const std::size_t mark = ctx.size();
    const std::string tag = group_tag(g, p);
    ctx.push(MarkerEntry{tag});
    if (trace != nullptr) trace->step("PUSH " + tag, ctx);

    try {
      infer_group_into(ctx, g, p, trace);
    } catch (KindError& e) {
      // Errors without a node position get the first member's location.
      const DataDecl& d = p.decls[g.members.front()];
      e.locate(d.pos, d.name);
      throw;
    }

    GroupDefaulting delta;
    for (std::size_t i : g.members) {
      const std::string& name = p.decls[i].name;
      delta.tycons.push_back(name);
      schemes[name] = apply_ctx(ctx, *ctx.tycon_kind(name));
    }

    const Context before = ctx;
    default_from(ctx, mark);
    for (std::size_t i = mark; i < ctx.size(); ++i) {
      if (const auto* s = std::get_if<SolvedEntry>(&ctx[i]);
          s != nullptr && std::holds_alternative<UnsolvedEntry>(before[i])) {
        delta.solved.emplace_back(s->var, s->solution);
      }
    }
    if (trace != nullptr) trace->step("DEFAULT " + tag, ctx);
    result.defaults.push_back(std::move(delta));

    std::vector<TyConEntry> closed;
    for (std::size_t i : g.members) {
      const std::string& name = p.decls[i].name;
      Kind k = apply_ctx(ctx, *ctx.tycon_kind(name));
      if (!is_closed(k)) {
        throw InvariantViolation(fmt::format(
            "kind of {} is not closed after defaulting: {}", name,
            pretty_kind(k)));
      }
      finals[name] = k;
      closed.push_back(TyConEntry{name, std::move(k)});
    }
    ctx.truncate(mark);
    for (TyConEntry& e : closed) ctx.push(std::move(e));
    if (trace != nullptr) trace->step("CLOSE " + tag, ctx);
  }

  for (const DataDecl& d : p.decls) {
    result.kinds.push_back(TyConKind{d.name, finals.at(d.name)});
    result.schemes.push_back(TyConKind{d.name, schemes.at(d.name)});
  }
  return result;
}

}  // namespace kindred
