#include "kindred/unify.hpp"

#include <fmt/format.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kindred/surface.hpp"

namespace kindred {
namespace {

std::size_t require_unsolved(const Context& ctx, UVar v) {
  auto pos = ctx.position_of(v);
  if (!pos || !ctx.is_unsolved(v)) {
    throw InvariantViolation(fmt::format("^{} is not an unsolved entry", v.id));
  }
  return *pos;
}

class Promoter {
 public:
  Promoter(Context& ctx, UVar target, Trace* trace)
      : ctx_(ctx), target_(target), trace_(trace),
        target_pos_(require_unsolved(ctx, target)) {}

  Kind run(const Kind& k) { return walk(k); }

 private:
  Kind walk(const Kind& k) {
    switch (k.tag()) {
      case Kind::Tag::kStar:
        return k;
      case Kind::Tag::kUVar:
        return move_left(k.uvar_id());
      case Kind::Tag::kVar:
        check_rigid(k.name());
        return k;
      case Kind::Tag::kArrow: {
        Kind d = walk(k.dom());
        Kind c = walk(k.cod());
        return Kind::arrow(std::move(d), std::move(c));
      }
      case Kind::Tag::kForall: {
        bound_.push_back(k.name());
        Kind b = walk(k.body());
        bound_.pop_back();
        return Kind::forall(k.name(), std::move(b));
      }
    }
    return k;
  }

  Kind move_left(UVar b) {
    if (b == target_) return Kind::uvar(b);
    if (auto it = moved_.find(b); it != moved_.end()) return Kind::uvar(it->second);
    auto pos = ctx_.position_of(b);
    if (!pos) {
      throw InvariantViolation(fmt::format("^{} is not declared", b.id));
    }
    if (*pos < target_pos_) return Kind::uvar(b);
    if (!ctx_.is_unsolved(b)) {
      throw InvariantViolation(
          fmt::format("promote expects a fully applied kind; ^{} is solved",
                      b.id));
    }
    const UVar b1 = ctx_.fresh_at(target_pos_);
    ++target_pos_;
    ctx_.set_solution(b, Kind::uvar(b1));
    moved_.emplace(b, b1);
    if (trace_ != nullptr) {
      trace_->step(fmt::format("PROMOTE ^{} to ^{} left of ^{}", b.id, b1.id,
                               target_.id),
                   ctx_);
    }
    return Kind::uvar(b1);
  }

  void check_rigid(const std::string& name) const {
    for (const std::string& n : bound_) {
      if (n == name) return;
    }
    auto pos = ctx_.position_of_tyvar(name);
    if (!pos) {
      throw KindError(ErrorCode::kUnboundVar,
                      fmt::format("kind variable {} is not in scope", name));
    }
    if (*pos > target_pos_) {
      throw KindError(ErrorCode::kEscapeError,
                      fmt::format("kind variable {} would escape its scope "
                                  "through ^{}",
                                  name, target_.id));
    }
  }

  Context& ctx_;
  UVar target_;
  Trace* trace_;
  std::size_t target_pos_;
  std::map<UVar, UVar> moved_;
  std::vector<std::string> bound_;
};

struct Measure {
  std::size_t unsolved;
  std::size_t size;

  friend auto operator<=>(const Measure&, const Measure&) = default;
};

class Unifier {
 public:
  Unifier(Context& ctx, Trace* trace, UnifyStats& stats)
      : ctx_(ctx), trace_(trace), stats_(stats) {}

  void run(const Kind& a, const Kind& b) {
    const std::size_t n = a.size() + b.size() + ctx_.size();
    stats_.bound = 4 * n * n;
    go(a, b, std::nullopt);
  }

 private:
  void go(const Kind& lhs, const Kind& rhs, std::optional<Measure> parent) {
    if (++stats_.steps > stats_.bound) {
      throw InvariantViolation(fmt::format(
          "unification exceeded its step bound of {}", stats_.bound));
    }
    const Kind a = apply_ctx(ctx_, lhs);
    const Kind b = apply_ctx(ctx_, rhs);
    const Measure m{ctx_.unsolved_count(), a.size() + b.size()};
    if (parent && !(m < *parent)) {
      throw InvariantViolation(fmt::format(
          "termination measure did not decrease: ({}, {}) after ({}, {})",
          m.unsolved, m.size, parent->unsolved, parent->size));
    }
    if (trace_ != nullptr) {
      trace_->step(
          fmt::format("UNIFY {} ~ {}", pretty_kind(a), pretty_kind(b)), ctx_);
    }

    if (a.is_uvar() && b.is_uvar()) {
      if (a.uvar_id() == b.uvar_id()) return;
      const std::size_t pa = require_unsolved(ctx_, a.uvar_id());
      const std::size_t pb = require_unsolved(ctx_, b.uvar_id());
      if (pa < pb) {
        solve(b.uvar_id(), a);
      } else {
        solve(a.uvar_id(), b);
      }
      return;
    }
    if (a.is_uvar()) {
      solve_with(a.uvar_id(), b);
      return;
    }
    if (b.is_uvar()) {
      solve_with(b.uvar_id(), a);
      return;
    }
    if (a.tag() != b.tag()) mismatch(a, b);

    switch (a.tag()) {
      case Kind::Tag::kStar:
        return;
      case Kind::Tag::kArrow:
        go(a.dom(), b.dom(), m);
        go(a.cod(), b.cod(), m);
        return;
      case Kind::Tag::kVar:
        if (a.name() != b.name()) mismatch(a, b);
        return;
      case Kind::Tag::kForall: {
        const std::string skolem = fmt::format("'k{}", ctx_.allocate().id);
        ctx_.push(TyVarEntry{skolem, Kind::star()});
        const Kind body_a =
            substitute_vars(a.body(), {{a.name(), Kind::var(skolem)}});
        const Kind body_b =
            substitute_vars(b.body(), {{b.name(), Kind::var(skolem)}});
        go(body_a, body_b, m);
        ctx_.truncate(*ctx_.position_of_tyvar(skolem));
        return;
      }
      case Kind::Tag::kUVar:
        break;
    }
  }

  void solve_with(UVar v, const Kind& k) {
    if (mentions_uvar(k, v)) {
      throw KindError(ErrorCode::kOccursCheck,
                      fmt::format("cannot construct the infinite kind ^{} ~ {}",
                                  v.id, pretty_kind(k)));
    }
    if (contains_forall(k)) {
      throw KindError(ErrorCode::kKindMismatch,
                      fmt::format("cannot instantiate ^{} with the polymorphic "
                                  "kind {}",
                                  v.id, pretty_kind(k)));
    }
    const std::size_t before = ctx_.size();
    Kind moved = promote_in_place(ctx_, v, k, trace_);
    stats_.promotions += ctx_.size() - before;
    solve(v, moved);
  }

  void solve(UVar v, const Kind& k) {
    solve_uvar_in_place(ctx_, v, k);
    if (trace_ != nullptr) {
      trace_->step(fmt::format("SOLVE ^{} := {}", v.id, pretty_kind(k)), ctx_);
    }
  }

  [[noreturn]] static void mismatch(const Kind& a, const Kind& b) {
    throw KindError(ErrorCode::kKindMismatch,
                    fmt::format("cannot match kind {} with {}", pretty_kind(a),
                                pretty_kind(b)));
  }

  Context& ctx_;
  Trace* trace_;
  UnifyStats& stats_;
};

}  // namespace

Kind promote_in_place(Context& ctx, UVar target, const Kind& k, Trace* trace) {
  return Promoter(ctx, target, trace).run(apply_ctx(ctx, k));
}

std::pair<Kind, Context> promote(Context ctx, UVar target, const Kind& k) {
  Kind out = promote_in_place(ctx, target, k);
  return {std::move(out), std::move(ctx)};
}

void unify_in_place(Context& ctx, const Kind& k1, const Kind& k2, Trace* trace,
                    UnifyStats* stats) {
  UnifyStats local;
  UnifyStats& s = stats != nullptr ? *stats : local;
  s = UnifyStats{};
  Unifier(ctx, trace, s).run(k1, k2);
}

Context unify(Context ctx, const Kind& k1, const Kind& k2, UnifyStats* stats) {
  unify_in_place(ctx, k1, k2, nullptr, stats);
  return ctx;
}

}  // namespace kindred
