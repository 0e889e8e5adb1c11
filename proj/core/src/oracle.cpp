#include "kindred/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

namespace kindred::oracle {
namespace {

struct Less {
  bool operator()(const Kind& a, const Kind& b) const {
    return structural_less(a, b);
  }
};

using KindSet = std::set<Kind, Less>;

std::size_t arity(const Kind& k) {
  std::size_t n = 0;
  for (const Kind* cur = &k; cur->is_arrow(); cur = &cur->cod()) ++n;
  return n;
}

bool is_monokind(const Kind& k) {
  switch (k.tag()) {
    case Kind::Tag::kStar:
      return true;
    case Kind::Tag::kArrow:
      return is_monokind(k.dom()) && is_monokind(k.cod());
    default:
      return false;
  }
}

/// Syntactic kinding against a fixed environment of closed kinds. Tycons
/// whose kinds are quantified are available at every instance whose
/// quantifiers come from enumerate_monokinds(inst_depth).
class Checker {
 public:
  Checker(const Assignment& env, int inst_depth)
      : env_(env), inst_depth_(inst_depth) {}

  bool decl_accepts(const DataDecl& d, const Kind& k) {
    std::map<std::string, Kind> kvars;
    vars_.clear();
    const Kind* cur = &k;
    for (const Param& prm : d.params) {
      if (!cur->is_arrow()) return false;
      if (prm.annotation && !match(*prm.annotation, cur->dom(), kvars)) {
        return false;
      }
      vars_.emplace_back(prm.name, cur->dom());
      cur = &cur->cod();
    }
    if (!cur->is_star()) return false;
    for (const DataCon& c : d.ctors) {
      for (const SurfaceType& arg : c.args) {
        if (!kinds_of(arg, kvars).contains(Kind::star())) return false;
      }
    }
    return true;
  }

  const KindSet& instances(const Kind& scheme) {
    auto cached = instances_.find(scheme);
    if (cached != instances_.end()) return cached->second;
    KindSet out;
    const std::vector<std::string> binders = leading_binders(scheme);
    const Kind body = strip_foralls(scheme);
    const std::vector<Kind> pool = enumerate_monokinds(inst_depth_);
    std::vector<std::size_t> idx(binders.size(), 0);
    for (;;) {
      std::map<std::string, Kind> subst;
      for (std::size_t i = 0; i < binders.size(); ++i) {
        subst.insert_or_assign(binders[i], pool[idx[i]]);
      }
      out.insert(substitute_vars(body, subst));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == pool.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    return instances_.emplace(scheme, std::move(out)).first->second;
  }

 private:
  KindSet kinds_of(const SurfaceType& t,
                   const std::map<std::string, Kind>& kvars) {
    using Tag = SurfaceType::Tag;
    switch (t.tag()) {
      case Tag::kVar:
        for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
          if (it->first == t.name()) return {it->second};
        }
        return {};
      case Tag::kCon: {
        auto it = env_.find(t.name());
        if (it == env_.end()) return {};
        return instances(it->second);
      }
      case Tag::kApp: {
        KindSet out;
        const KindSet funs = kinds_of(t.fun(), kvars);
        if (funs.empty()) return out;
        const KindSet args = kinds_of(t.arg(), kvars);
        for (const Kind& f : funs) {
          if (f.is_arrow() && args.contains(f.dom())) out.insert(f.cod());
        }
        return out;
      }
      case Tag::kArrow:
        if (kinds_of(t.dom(), kvars).contains(Kind::star()) &&
            kinds_of(t.cod(), kvars).contains(Kind::star())) {
          return {Kind::star()};
        }
        return {};
      case Tag::kForall:
        for (const Kind& k : enumerate_monokinds(inst_depth_)) {
          vars_.emplace_back(t.name(), k);
          const bool ok = kinds_of(t.body(), kvars).contains(Kind::star());
          vars_.pop_back();
          if (ok) return {Kind::star()};
        }
        return {};
      case Tag::kAnnot: {
        const Kind k = substitute_vars(t.annotation(), kvars);
        if (!is_closed(k)) return {};
        if (kinds_of(t.inner(), kvars).contains(k)) return {k};
        return {};
      }
    }
    return {};
  }

  const Assignment& env_;
  int inst_depth_;
  std::vector<std::pair<std::string, Kind>> vars_;
  std::map<Kind, KindSet, Less> instances_;
};

void collect_cons(const SurfaceType& t, std::vector<std::string>& out) {
  using Tag = SurfaceType::Tag;
  switch (t.tag()) {
    case Tag::kVar:
      return;
    case Tag::kCon:
      out.push_back(t.name());
      return;
    case Tag::kApp:
      collect_cons(t.fun(), out);
      collect_cons(t.arg(), out);
      return;
    case Tag::kArrow:
      collect_cons(t.dom(), out);
      collect_cons(t.cod(), out);
      return;
    case Tag::kForall:
      collect_cons(t.body(), out);
      return;
    case Tag::kAnnot:
      collect_cons(t.inner(), out);
      return;
  }
}

struct GroupDecls {
  std::vector<const DataDecl*> decls;

  std::size_t param_count() const {
    std::size_t n = 0;
    for (const DataDecl* d : decls) n += d->params.size();
    return n;
  }

  /// Member kinds built from one flat list of parameter kinds.
  std::vector<Kind> kinds(const std::vector<Kind>& params) const {
    std::vector<Kind> out;
    auto it = params.begin();
    for (const DataDecl* d : decls) {
      std::vector<Kind> doms(it, it + static_cast<long>(d->params.size()));
      it += static_cast<long>(d->params.size());
      out.push_back(Kind::arrows(doms, Kind::star()));
    }
    return out;
  }

  bool accepts(Assignment& env, const std::vector<Kind>& kinds,
               int inst_depth) const {
    for (std::size_t i = 0; i < decls.size(); ++i) {
      env.insert_or_assign(decls[i]->name, kinds[i]);
    }
    Checker checker(env, inst_depth);
    for (std::size_t i = 0; i < decls.size(); ++i) {
      if (!checker.decl_accepts(*decls[i], kinds[i])) return false;
    }
    return true;
  }
};

std::optional<std::vector<GroupDecls>> group_decls(const Program& p) {
  auto groups = oracle_groups(p);
  if (!groups) return std::nullopt;
  std::vector<GroupDecls> out;
  for (const auto& names : *groups) {
    GroupDecls g;
    for (const std::string& n : names) g.decls.push_back(p.find(n));
    out.push_back(std::move(g));
  }
  return out;
}

std::size_t total_size(const std::vector<Kind>& ks) {
  std::size_t n = 0;
  for (const Kind& k : ks) n += k.size();
  return n;
}

bool candidate_less(const std::vector<Kind>& a, const std::vector<Kind>& b) {
  const std::size_t sa = total_size(a);
  const std::size_t sb = total_size(b);
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      Less{});
}

/// Calls `f` on every choice of one element per pool; stops when `f`
/// returns false.
void for_each_product(const std::vector<const std::vector<Kind>*>& pools,
                      const std::function<bool(const std::vector<Kind>&)>& f) {
  for (const auto* pool : pools) {
    if (pool->empty()) return;
  }
  std::vector<std::size_t> idx(pools.size(), 0);
  std::vector<Kind> pick(pools.size());
  for (;;) {
    for (std::size_t i = 0; i < pools.size(); ++i) pick[i] = (*pools[i])[idx[i]];
    if (!f(pick)) return;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pools[i]->size()) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

/// Every list of `slots` monokinds whose sizes sum to at most `budget`.
void for_each_within_size(
    std::size_t slots, std::size_t budget,
    const std::function<void(const std::vector<Kind>&)>& f) {
  std::vector<Kind> cur(slots);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                          std::size_t left) {
    if (i == slots) {
      f(cur);
      return;
    }
    const std::size_t reserve = slots - i - 1;
    for (std::size_t s = 1; s + reserve <= left; s += 2) {
      for (const Kind& k : monokinds_of_size(s)) {
        cur[i] = k;
        go(i + 1, left - s);
      }
    }
  };
  go(0, budget);
}

bool scheme_matches(const GroupDecls& g, const std::vector<Kind>& kinds,
                    const std::map<std::string, Kind>& scheme) {
  std::map<std::string, Kind> subst;
  for (std::size_t i = 0; i < g.decls.size(); ++i) {
    auto it = scheme.find(g.decls[i]->name);
    if (it == scheme.end() || !match(it->second, kinds[i], subst)) {
      return false;
    }
  }
  return true;
}

constexpr int kMonoInstDepth = 2;

}  // namespace

std::vector<Kind> enumerate_monokinds(int depth) {
  if (depth < 0) {
    throw InvariantViolation("enumeration depth must be non-negative");
  }
  if (depth > kMaxDepth) {
    throw KindError(ErrorCode::kDepthTooLarge,
                    fmt::format("enumeration depth {} exceeds the limit of {}",
                                depth, kMaxDepth));
  }
  std::vector<Kind> out{Kind::star()};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Kind> next{Kind::star()};
    for (const Kind& a : out) {
      for (const Kind& b : out) next.push_back(Kind::arrow(a, b));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), Less{});
  return out;
}

std::vector<Kind> monokinds_of_size(std::size_t size) {
  static std::vector<std::vector<Kind>> memo{{}, {Kind::star()}};
  while (memo.size() <= size) {
    const std::size_t s = memo.size();
    std::vector<Kind> level;
    for (std::size_t ds = 1; ds + 2 <= s; ds += 2) {
      const std::size_t cs = s - 1 - ds;
      for (const Kind& a : memo[ds]) {
        for (const Kind& b : memo[cs]) level.push_back(Kind::arrow(a, b));
      }
    }
    std::sort(level.begin(), level.end(), Less{});
    memo.push_back(std::move(level));
  }
  return memo[size];
}

bool match(const Kind& pattern, const Kind& closed,
           std::map<std::string, Kind>& subst) {
  auto bind = [&](std::string key) {
    auto [it, fresh] = subst.emplace(std::move(key), closed);
    return fresh || it->second == closed;
  };
  switch (pattern.tag()) {
    case Kind::Tag::kStar:
      return closed.is_star();
    case Kind::Tag::kArrow:
      return closed.is_arrow() && match(pattern.dom(), closed.dom(), subst) &&
             match(pattern.cod(), closed.cod(), subst);
    case Kind::Tag::kVar:
      return bind(pattern.name());
    case Kind::Tag::kUVar:
      return bind(fmt::format("^{}", pattern.uvar_id().id));
    case Kind::Tag::kForall:
      return false;
  }
  return false;
}

bool assignment_checks(const Program& p, const Assignment& assign) {
  for (const DataDecl& d : p.decls) {
    auto it = assign.find(d.name);
    if (it == assign.end() || !is_closed(it->second)) return false;
  }
  Checker checker(assign, kMonoInstDepth);
  for (const DataDecl& d : p.decls) {
    if (!checker.decl_accepts(d, assign.at(d.name))) return false;
  }
  return true;
}

std::optional<std::vector<std::vector<std::string>>> oracle_groups(
    const Program& p) {
  const std::size_t n = p.decls.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> refs;
    for (const DataCon& c : p.decls[i].ctors) {
      for (const SurfaceType& arg : c.args) collect_cons(arg, refs);
    }
    for (const std::string& r : refs) {
      auto j = p.index_of(r);
      if (!j) return std::nullopt;
      reach[i][*j] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<bool> done(n, false);
  std::vector<std::vector<std::string>> out;
  for (std::size_t emitted = 0; emitted < n;) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      std::vector<std::size_t> members{i};
      for (std::size_t j = i + 1; j < n; ++j) {
        if (reach[i][j] && reach[j][i]) members.push_back(j);
      }
      bool ready = true;
      for (std::size_t m : members) {
        for (std::size_t j = 0; j < n; ++j) {
          const bool mate =
              std::find(members.begin(), members.end(), j) != members.end();
          if (reach[m][j] && !mate && !done[j]) ready = false;
        }
      }
      if (!ready) continue;
      std::vector<std::string> names;
      for (std::size_t m : members) {
        done[m] = true;
        names.push_back(p.decls[m].name);
      }
      emitted += members.size();
      out.push_back(std::move(names));
      break;
    }
  }
  return out;
}

bool declarative_accepts(const Program& p, const Assignment& assign) {
  if (assign.size() != p.decls.size()) return false;
  for (const DataDecl& d : p.decls) {
    auto it = assign.find(d.name);
    if (it == assign.end() || !is_monokind(it->second)) return false;
  }
  auto groups = group_decls(p);
  if (!groups) return false;

  Assignment env = assign;
  for (const GroupDecls& g : *groups) {
    std::vector<Kind> chosen;
    for (const DataDecl* d : g.decls) chosen.push_back(assign.at(d->name));
    if (!g.accepts(env, chosen, kMonoInstDepth)) return false;

    // No other accepted candidate may be as small.
    std::size_t fixed = 0;
    for (const DataDecl* d : g.decls) fixed += d->params.size() + 1;
    const std::size_t size = total_size(chosen);
    bool minimal = true;
    for_each_within_size(
        g.param_count(), size - fixed, [&](const std::vector<Kind>& params) {
          if (!minimal) return;
          const std::vector<Kind> kinds = g.kinds(params);
          if (kinds != chosen && g.accepts(env, kinds, kMonoInstDepth)) {
            minimal = false;
          }
        });
    if (!minimal) return false;
    g.accepts(env, chosen, kMonoInstDepth);
  }
  return true;
}

std::optional<Assignment> accepted_assignment(const Program& p, int depth) {
  auto groups = group_decls(p);
  if (!groups) return std::nullopt;
  const std::vector<Kind> pool = enumerate_monokinds(depth);
  std::map<std::size_t, std::vector<Kind>> by_arity;
  for (const Kind& k : pool) by_arity[arity(k)].push_back(k);

  Assignment env;
  for (const GroupDecls& g : *groups) {
    std::vector<const std::vector<Kind>*> pools;
    for (const DataDecl* d : g.decls) pools.push_back(&by_arity[d->params.size()]);
    std::optional<std::vector<Kind>> best;
    for_each_product(pools, [&](const std::vector<Kind>& kinds) {
      if (g.accepts(env, kinds, kMonoInstDepth) &&
          (!best || candidate_less(kinds, *best))) {
        best = kinds;
      }
      return true;
    });
    if (!best) return std::nullopt;
    for (std::size_t i = 0; i < g.decls.size(); ++i) {
      env.insert_or_assign(g.decls[i]->name, (*best)[i]);
    }
  }
  return env;
}

std::optional<Counterexample> principal_check(
    const Program& p, const std::vector<TyConKind>& scheme, int depth) {
  auto groups = group_decls(p);
  if (!groups) return std::nullopt;
  std::map<std::string, Kind> schemes;
  for (const TyConKind& tk : scheme) schemes.insert_or_assign(tk.name, tk.kind);
  const std::vector<Kind> pool = enumerate_monokinds(depth);

  Assignment env;
  for (const GroupDecls& g : *groups) {
    std::vector<const std::vector<Kind>*> pools(g.param_count(), &pool);
    std::optional<std::vector<Kind>> best;
    std::optional<Counterexample> bad;
    for_each_product(pools, [&](const std::vector<Kind>& params) {
      const std::vector<Kind> kinds = g.kinds(params);
      if (!g.accepts(env, kinds, kMonoInstDepth)) return true;
      if (!scheme_matches(g, kinds, schemes)) {
        Counterexample ce;
        for (std::size_t i = 0; i < g.decls.size(); ++i) {
          ce.group.push_back(g.decls[i]->name);
          ce.assignment.emplace(g.decls[i]->name, kinds[i]);
        }
        bad = std::move(ce);
        return false;
      }
      if (!best || candidate_less(kinds, *best)) best = kinds;
      return true;
    });
    if (bad) return bad;
    if (!best) return std::nullopt;
    for (std::size_t i = 0; i < g.decls.size(); ++i) {
      env.insert_or_assign(g.decls[i]->name, (*best)[i]);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_poly_instances(
    const Program& p, const std::vector<TyConKind>& kinds, int depth) {
  Assignment env;
  for (const TyConKind& tk : kinds) env.insert_or_assign(tk.name, tk.kind);
  for (const DataDecl& d : p.decls) {
    if (!env.contains(d.name)) return fmt::format("{} has no kind", d.name);
  }
  Checker checker(env, depth);
  for (const DataDecl& d : p.decls) {
    for (const Kind& inst : checker.instances(env.at(d.name))) {
      if (!checker.decl_accepts(d, inst)) {
        return fmt::format("{} at {}", d.name, pretty_kind(inst));
      }
    }
  }
  return std::nullopt;
}

}  // namespace kindred::oracle
