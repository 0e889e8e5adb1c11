#include "kindred/poly.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <map>

#include "kindred/deps.hpp"
#include "kindred/unify.hpp"

namespace kindred {
namespace {

std::string group_tag(const Group& g, const Program& p) {
  std::string tag = "group ";
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    if (i > 0) tag += ',';
    tag += p.decls[g.members[i]].name;
  }
  return tag;
}

// Quantifiable variables of an applied kind, first occurrence in preorder.
struct Residual {
  std::optional<UVar> uvar;
  std::string name;  // rigid variable name when !uvar
};

void collect_residuals(const Kind& k, std::size_t mark, const Context& ctx,
                       std::vector<std::string>& bound,
                       std::vector<Residual>& out) {
  switch (k.tag()) {
    case Kind::Tag::kUVar: {
      const UVar v = k.uvar_id();
      auto pos = ctx.position_of(v);
      if (!pos || *pos <= mark) return;
      for (const Residual& r : out) {
        if (r.uvar == v) return;
      }
      out.push_back(Residual{v, {}});
      return;
    }
    case Kind::Tag::kVar: {
      if (std::find(bound.begin(), bound.end(), k.name()) != bound.end()) {
        return;
      }
      auto pos = ctx.position_of_tyvar(k.name());
      if (!pos || *pos <= mark) return;
      for (const Residual& r : out) {
        if (!r.uvar && r.name == k.name()) return;
      }
      out.push_back(Residual{std::nullopt, k.name()});
      return;
    }
    case Kind::Tag::kArrow:
      collect_residuals(k.dom(), mark, ctx, bound, out);
      collect_residuals(k.cod(), mark, ctx, bound, out);
      return;
    case Kind::Tag::kForall:
      bound.push_back(k.name());
      collect_residuals(k.body(), mark, ctx, bound, out);
      bound.pop_back();
      return;
    case Kind::Tag::kStar:
      return;
  }
}

std::string placeholder(UVar v) { return fmt::format("?u{}", v.id); }

struct Generalized {
  Kind kind;
  /// Source name of each quantified rigid variable -> canonical name.
  std::map<std::string, std::string> rigid_names;
};

Generalized generalize_at(const Context& ctx, std::size_t mark,
                          const Kind& k) {
  const Kind applied = apply_ctx(ctx, k);
  std::vector<std::string> bound;
  std::vector<Residual> residuals;
  collect_residuals(applied, mark, ctx, bound, residuals);

  Kind body = substitute_uvars(applied, [&](UVar v) -> std::optional<Kind> {
    for (const Residual& r : residuals) {
      if (r.uvar == v) return Kind::var(placeholder(v));
    }
    return std::nullopt;
  });
  for (auto it = residuals.rbegin(); it != residuals.rend(); ++it) {
    body = Kind::forall(it->uvar ? placeholder(*it->uvar) : it->name,
                        std::move(body));
  }

  Generalized out{canonicalize(body), {}};
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (!residuals[i].uvar) {
      out.rigid_names.emplace(residuals[i].name, fmt::format("k{}", i + 1));
    }
  }
  return out;
}

std::string unique_tyvar(const Context& ctx, const std::string& base) {
  if (!ctx.position_of_tyvar(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = fmt::format("{}_{}", base, i);
    if (!ctx.position_of_tyvar(candidate)) return candidate;
  }
}

// Free kind variables written in the header annotations of `d`.
std::vector<std::string> header_kind_vars(const DataDecl& d) {
  std::vector<std::string> out;
  for (const Param& prm : d.params) {
    if (!prm.annotation) continue;
    for (const std::string& v : free_vars(*prm.annotation)) {
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      auto clash = std::find_if(d.params.begin(), d.params.end(),
                                [&](const Param& q) { return q.name == v; });
      if (clash != d.params.end()) {
        throw KindError(
            Diagnostic{ErrorCode::kDependentKind, prm.pos,
                       fmt::format("parameter {} is used as a kind; dependent "
                                   "kinds are not supported",
                                   v),
                       d.name});
      }
      out.push_back(v);
    }
  }
  return out;
}

SurfaceType map_annotations(const SurfaceType& t,
                            const std::function<Kind(const Kind&)>& f) {
  using Tag = SurfaceType::Tag;
  switch (t.tag()) {
    case Tag::kVar:
    case Tag::kCon:
      return t;
    case Tag::kApp:
      return SurfaceType::app(map_annotations(t.fun(), f),
                              map_annotations(t.arg(), f), t.pos());
    case Tag::kArrow:
      return SurfaceType::arrow(map_annotations(t.dom(), f),
                                map_annotations(t.cod(), f), t.pos());
    case Tag::kForall:
      return SurfaceType::forall(t.name(), map_annotations(t.body(), f),
                                 t.pos());
    case Tag::kAnnot:
      return SurfaceType::annot(map_annotations(t.inner(), f),
                                f(t.annotation()), t.pos());
  }
  return t;
}

SurfaceType strip_annotations(const SurfaceType& t) {
  using Tag = SurfaceType::Tag;
  switch (t.tag()) {
    case Tag::kVar:
    case Tag::kCon:
      return t;
    case Tag::kApp:
      return SurfaceType::app(strip_annotations(t.fun()),
                              strip_annotations(t.arg()), t.pos());
    case Tag::kArrow:
      return SurfaceType::arrow(strip_annotations(t.dom()),
                                strip_annotations(t.cod()), t.pos());
    case Tag::kForall:
      return SurfaceType::forall(t.name(), strip_annotations(t.body()),
                                 t.pos());
    case Tag::kAnnot:
      return strip_annotations(t.inner());
  }
  return t;
}

ElabDecl elaborate(const DataDecl& d, const Kind& canonical,
                   const std::function<Kind(const Kind&)>& annot) {
  ElabDecl out{d.name, {}, canonical, {}};
  const Kind* cur = &canonical;
  std::size_t next_param = 0;
  for (;;) {
    if (cur->is_forall()) {
      out.binders.push_back(ElabBinder{cur->name(), Kind::star(), true});
      cur = &cur->body();
    } else if (next_param < d.params.size() && cur->is_arrow()) {
      out.binders.push_back(
          ElabBinder{d.params[next_param].name, cur->dom(), false});
      ++next_param;
      cur = &cur->cod();
    } else {
      break;
    }
  }
  for (const DataCon& c : d.ctors) {
    ElabCon ec{c.name, {}};
    for (const SurfaceType& arg : c.args) {
      ec.args.push_back(ElabArg{map_annotations(arg, annot), Kind::star()});
    }
    out.ctors.push_back(std::move(ec));
  }
  return out;
}

void check_ctors(Context& ctx, const DataDecl& d, const Scope& scope,
                 const std::map<std::string, Kind>& kind_vars, Trace* trace) {
  KindingOptions opts{Mode::kPoly, trace, d.name, &kind_vars};
  for (const DataCon& c : d.ctors) {
    for (const SurfaceType& arg : c.args) {
      check_type_kind(ctx, scope, arg, Kind::star(), opts);
    }
  }
}

[[noreturn]] void arity_error(const DataDecl& d, const Kind& sig,
                              std::string_view what) {
  throw KindError(Diagnostic{
      ErrorCode::kKindMismatch, d.pos,
      fmt::format("{} with {} parameter(s) does not match its signature {}: {}",
                  d.name, d.params.size(), pretty_kind(sig), what),
      d.name});
}

ElabDecl check_signature_into(Context& ctx, const std::string& name,
                              const Kind& sig, const DataDecl& d,
                              Trace* trace) {
  const Kind canonical = canonicalize(sig);
  if (ctx.tycon_kind(name) == nullptr) {
    ctx.push(TyConEntry{name, canonical});
  }
  const std::size_t mark = ctx.size();
  ctx.push(MarkerEntry{"sig " + name});
  if (trace != nullptr) trace->step("PUSH sig " + name, ctx);

  std::map<std::string, Kind> kind_vars;
  for (const std::string& v : header_kind_vars(d)) {
    kind_vars.emplace(v, Kind::uvar(ctx.fresh()));
  }

  Scope scope;
  Kind cur = canonical;
  for (const Param& prm : d.params) {
    while (cur.is_forall()) {
      const std::string rigid = unique_tyvar(ctx, cur.name());
      ctx.push(TyVarEntry{rigid, Kind::star()});
      cur = rigid == cur.name()
                ? cur.body()
                : substitute_vars(cur.body(), {{cur.name(), Kind::var(rigid)}});
    }
    if (!cur.is_arrow()) arity_error(d, canonical, "too many parameters");
    if (prm.annotation) {
      try {
        unify_in_place(ctx, substitute_vars(*prm.annotation, kind_vars),
                       cur.dom(), trace);
      } catch (KindError& e) {
        e.locate(prm.pos, d.name);
        throw;
      }
    }
    scope.bind(prm.name, cur.dom());
    cur = cur.cod();
  }
  if (!cur.is_star()) arity_error(d, canonical, "result kind is not *");
  if (trace != nullptr) trace->step("SIGNATURE " + name, ctx);

  check_ctors(ctx, d, scope, kind_vars, trace);

  ElabDecl elab = elaborate(d, canonical, [&](const Kind& k) {
    const Kind resolved = apply_ctx(ctx, substitute_vars(k, kind_vars));
    return substitute_uvars(resolved, [](UVar) -> std::optional<Kind> {
      return Kind::star();
    });
  });
  ctx.truncate(mark);
  if (trace != nullptr) trace->step("CLOSE sig " + name, ctx);
  return elab;
}

std::vector<ElabDecl> infer_group_poly(Context& ctx, const Group& g,
                                       const Program& p, Trace* trace) {
  const std::size_t mark = ctx.size();
  const std::string tag = group_tag(g, p);
  ctx.push(MarkerEntry{tag});
  if (trace != nullptr) trace->step("PUSH " + tag, ctx);

  const std::size_t n = g.members.size();
  std::vector<std::map<std::string, Kind>> kind_vars(n);
  // rigid entry name -> source name, per member
  std::vector<std::map<std::string, std::string>> rigid_source(n);
  for (std::size_t m = 0; m < n; ++m) {
    const DataDecl& d = p.decls[g.members[m]];
    for (const std::string& v : header_kind_vars(d)) {
      const std::string entry = unique_tyvar(ctx, v);
      ctx.push(TyVarEntry{entry, Kind::star()});
      kind_vars[m].emplace(v, Kind::var(entry));
      rigid_source[m].emplace(entry, v);
    }
  }

  std::vector<Scope> scopes(n);
  for (std::size_t m = 0; m < n; ++m) {
    const DataDecl& d = p.decls[g.members[m]];
    std::vector<Kind> params;
    for (const Param& prm : d.params) {
      Kind k = prm.annotation ? substitute_vars(*prm.annotation, kind_vars[m])
                              : Kind::uvar(ctx.fresh());
      scopes[m].bind(prm.name, k);
      params.push_back(std::move(k));
    }
    ctx.push(TyConEntry{d.name, Kind::arrows(params, Kind::star())});
    if (trace != nullptr) trace->step("ALLOC " + d.name, ctx);
  }

  for (std::size_t m = 0; m < n; ++m) {
    check_ctors(ctx, p.decls[g.members[m]], scopes[m], kind_vars[m], trace);
  }

  std::vector<Kind> roots;
  for (std::size_t i : g.members) {
    roots.push_back(apply_ctx(ctx, *ctx.tycon_kind(p.decls[i].name)));
  }
  if (auto diag = quantification_check(ctx, tag, roots)) {
    const DataDecl& d = p.decls[g.members.front()];
    diag->pos = d.pos;
    diag->decl = d.name;
    throw KindError(std::move(*diag));
  }

  std::vector<ElabDecl> out;
  std::vector<TyConEntry> closed;
  for (std::size_t m = 0; m < n; ++m) {
    const DataDecl& d = p.decls[g.members[m]];
    Generalized gen = generalize_at(ctx, mark, roots[m]);
    std::map<std::string, Kind> renaming;
    for (const auto& [entry, source] : rigid_source[m]) {
      if (auto it = gen.rigid_names.find(entry); it != gen.rigid_names.end()) {
        renaming.emplace(source, Kind::var(it->second));
      }
    }
    out.push_back(elaborate(d, gen.kind, [&](const Kind& k) {
      return substitute_vars(k, renaming);
    }));
    closed.push_back(TyConEntry{d.name, gen.kind});
  }

  ctx.truncate(mark);
  for (TyConEntry& e : closed) ctx.push(std::move(e));
  if (trace != nullptr) trace->step("GENERALIZE " + tag, ctx);
  return out;
}

// Signatures may leave kind variables implicit; they are quantified in
// first-occurrence order.
Kind close_signature(const Kind& sig) {
  Kind out = sig;
  const std::vector<std::string> free = free_vars(sig);
  for (auto it = free.rbegin(); it != free.rend(); ++it) {
    out = Kind::forall(*it, std::move(out));
  }
  return canonicalize(out);
}

}  // namespace

std::string pretty_elab(const ElabDecl& d) {
  std::string out = "data " + d.name;
  for (const ElabBinder& b : d.binders) {
    out += b.invisible ? " @(" : " (";
    out += b.name + " :: " + pretty_kind(b.kind) + ')';
  }
  for (std::size_t i = 0; i < d.ctors.size(); ++i) {
    out += i == 0 ? " = " : " | ";
    out += d.ctors[i].name;
    for (const ElabArg& a : d.ctors[i].args) {
      out += " (" + pretty_type(a.type) + " :: " + pretty_kind(a.kind) + ')';
    }
  }
  return out;
}

DataDecl erase(const ElabDecl& d) {
  DataDecl out;
  out.name = d.name;
  for (const ElabBinder& b : d.binders) {
    if (!b.invisible) out.params.push_back(Param{b.name, std::nullopt, {}});
  }
  for (const ElabCon& c : d.ctors) {
    DataCon dc{c.name, {}, {}};
    for (const ElabArg& a : c.args) {
      dc.args.push_back(strip_annotations(a.type));
    }
    out.ctors.push_back(std::move(dc));
  }
  return out;
}

Program elaborated_program(const std::vector<ElabDecl>& decls) {
  Program p;
  for (const ElabDecl& d : decls) {
    p.decls.push_back(erase(d));
    p.sigs.emplace(d.name, Signature{d.tycon_kind, {}});
  }
  return p;
}

Kind instantiate_in_place(Context& ctx, const Kind& k) {
  Kind cur = k;
  while (cur.is_forall()) {
    const UVar v = ctx.fresh();
    cur = substitute_vars(cur.body(), {{cur.name(), Kind::uvar(v)}});
  }
  return cur;
}

std::pair<Kind, Context> instantiate(Context ctx, const Kind& k) {
  Kind out = instantiate_in_place(ctx, k);
  return {std::move(out), std::move(ctx)};
}

std::optional<Diagnostic> quantification_check(const Context& ctx,
                                               std::string_view marker,
                                               const std::vector<Kind>& roots) {
  auto mark = ctx.position_of_marker(marker);
  if (!mark) {
    throw InvariantViolation(fmt::format("marker {} is not in the context",
                                         marker));
  }
  for (const Kind& root : roots) {
    const Kind k = apply_ctx(ctx, root);
    for (UVar u : free_uvars(k)) {
      if (*ctx.position_of(u) < *mark) {
        return Diagnostic{
            ErrorCode::kQuantificationCheck, std::nullopt,
            fmt::format("cannot generalize ^{}: it was introduced outside "
                        "this group",
                        u.id),
            {}};
      }
    }
    for (const std::string& v : free_vars(k)) {
      auto pos = ctx.position_of_tyvar(v);
      if (!pos || *pos < *mark) {
        return Diagnostic{ErrorCode::kQuantificationCheck, std::nullopt,
                          fmt::format("cannot generalize kind variable {}: it "
                                      "is bound outside this group",
                                      v),
                          {}};
      }
    }
  }
  return std::nullopt;
}

Kind generalize(const Context& ctx, std::string_view marker, const Kind& k) {
  auto mark = ctx.position_of_marker(marker);
  if (!mark) {
    throw InvariantViolation(fmt::format("marker {} is not in the context",
                                         marker));
  }
  return generalize_at(ctx, *mark, k).kind;
}

Context check_signature(Context ctx, const std::string& name, const Kind& sig,
                        const DataDecl& d) {
  check_signature_into(ctx, name, sig, d, nullptr);
  return ctx;
}

const Kind* PolyResult::kind_of(std::string_view name) const {
  for (const TyConKind& tk : kinds) {
    if (tk.name == name) return &tk.kind;
  }
  return nullptr;
}

PolyResult run_poly(const Program& p, Trace* trace) {
  Context ctx;
  std::map<std::string, Kind> sigs;
  for (const DataDecl& d : p.decls) {
    auto it = p.sigs.find(d.name);
    if (it == p.sigs.end()) continue;
    Kind closed = close_signature(it->second.kind);
    ctx.push(TyConEntry{d.name, closed});
    sigs.emplace(d.name, std::move(closed));
  }
  if (trace != nullptr && !sigs.empty()) trace->step("SIGNATURES", ctx);

  std::map<std::string, ElabDecl> elab;
  for (const Group& g : group_topo(p, Grouping::kSignaturesBreakCycles)) {
    const DataDecl& first = p.decls[g.members.front()];
    try {
      if (g.members.size() == 1 && sigs.contains(first.name)) {
        elab.emplace(first.name,
                     check_signature_into(ctx, first.name,
                                          sigs.at(first.name), first, trace));
        continue;
      }
      for (ElabDecl& e : infer_group_poly(ctx, g, p, trace)) {
        std::string name = e.name;
        elab.emplace(std::move(name), std::move(e));
      }
    } catch (KindError& e) {
      e.locate(first.pos, first.name);
      throw;
    }
  }

  PolyResult result;
  for (const DataDecl& d : p.decls) {
    ElabDecl& e = elab.at(d.name);
    result.kinds.push_back(TyConKind{d.name, e.tycon_kind});
    result.elab.push_back(std::move(e));
  }
  return result;
}

bool is_star_instance(const Kind& poly, const Kind& mono) {
  Kind cur = poly;
  while (cur.is_forall()) {
    cur = substitute_vars(cur.body(), {{cur.name(), Kind::star()}});
  }
  return cur == mono;
}

}  // namespace kindred
