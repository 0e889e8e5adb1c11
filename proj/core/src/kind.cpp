#include "kindred/kind.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "kindred/diagnostic.hpp"

namespace kindred {

struct Kind::Node {
  Tag tag = Tag::kStar;
  std::string name;
  UVar uvar;
  Kind lhs;  // dom, or Forall body
  Kind rhs;  // cod
  std::size_t size = 1;

  // Star leaves have no children, so the default Kind members must not
  // recurse into this constructor.
  Node(Tag t, std::string n, UVar u, Kind a, Kind b, std::size_t s)
      : tag(t), name(std::move(n)), uvar(u), lhs(std::move(a)),
        rhs(std::move(b)), size(s) {}
  explicit Node(std::nullptr_t) : lhs(nullptr), rhs(nullptr) {}
};

const std::shared_ptr<const Kind::Node>& Kind::star_node() {
  static const auto node = std::make_shared<const Node>(nullptr);
  return node;
}

Kind::Kind() : node_(star_node()) {}
Kind::Kind(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Kind Kind::star() { return Kind(star_node()); }

Kind Kind::arrow(Kind dom, Kind cod) {
  const std::size_t s = 1 + dom.size() + cod.size();
  return Kind(std::make_shared<const Node>(Tag::kArrow, std::string(), UVar{},
                                           std::move(dom), std::move(cod), s));
}

Kind Kind::var(std::string name) {
  return Kind(std::make_shared<const Node>(Tag::kVar, std::move(name), UVar{},
                                           Kind(), Kind(), 1));
}

Kind Kind::uvar(UVar v) {
  return Kind(std::make_shared<const Node>(Tag::kUVar, std::string(), v,
                                           Kind(), Kind(), 1));
}

Kind Kind::forall(std::string binder, Kind body) {
  const std::size_t s = 1 + body.size();
  return Kind(std::make_shared<const Node>(Tag::kForall, std::move(binder),
                                           UVar{}, std::move(body), Kind(), s));
}

Kind Kind::arrows(const std::vector<Kind>& doms, Kind result) {
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) {
    result = arrow(*it, std::move(result));
  }
  return result;
}

Kind::Tag Kind::tag() const { return node_->tag; }

const Kind& Kind::dom() const {
  if (!is_arrow()) throw InvariantViolation("dom() of a non-arrow kind");
  return node_->lhs;
}

const Kind& Kind::cod() const {
  if (!is_arrow()) throw InvariantViolation("cod() of a non-arrow kind");
  return node_->rhs;
}

const std::string& Kind::name() const {
  if (!is_var() && !is_forall()) {
    throw InvariantViolation("name() of a kind without a name");
  }
  return node_->name;
}

UVar Kind::uvar_id() const {
  if (!is_uvar()) throw InvariantViolation("uvar_id() of a non-uvar kind");
  return node_->uvar;
}

const Kind& Kind::body() const {
  if (!is_forall()) throw InvariantViolation("body() of a non-forall kind");
  return node_->lhs;
}

std::size_t Kind::size() const { return node_->size; }

bool operator==(const Kind& a, const Kind& b) {
  if (a.node_ == b.node_) return true;
  if (a.tag() != b.tag() || a.size() != b.size()) return false;
  switch (a.tag()) {
    case Kind::Tag::kStar:
      return true;
    case Kind::Tag::kArrow:
      return a.dom() == b.dom() && a.cod() == b.cod();
    case Kind::Tag::kVar:
      return a.name() == b.name();
    case Kind::Tag::kUVar:
      return a.uvar_id() == b.uvar_id();
    case Kind::Tag::kForall:
      return a.name() == b.name() && a.body() == b.body();
  }
  return false;
}

int depth(const Kind& k) {
  switch (k.tag()) {
    case Kind::Tag::kArrow:
      return 1 + std::max(depth(k.dom()), depth(k.cod()));
    case Kind::Tag::kForall:
      return depth(k.body());
    default:
      return 0;
  }
}

namespace {

void collect_uvars(const Kind& k, std::vector<UVar>& out) {
  switch (k.tag()) {
    case Kind::Tag::kUVar:
      if (std::find(out.begin(), out.end(), k.uvar_id()) == out.end()) {
        out.push_back(k.uvar_id());
      }
      break;
    case Kind::Tag::kArrow:
      collect_uvars(k.dom(), out);
      collect_uvars(k.cod(), out);
      break;
    case Kind::Tag::kForall:
      collect_uvars(k.body(), out);
      break;
    default:
      break;
  }
}

void collect_vars(const Kind& k, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  switch (k.tag()) {
    case Kind::Tag::kVar:
      if (std::find(bound.begin(), bound.end(), k.name()) == bound.end() &&
          std::find(out.begin(), out.end(), k.name()) == out.end()) {
        out.push_back(k.name());
      }
      break;
    case Kind::Tag::kArrow:
      collect_vars(k.dom(), bound, out);
      collect_vars(k.cod(), bound, out);
      break;
    case Kind::Tag::kForall:
      bound.push_back(k.name());
      collect_vars(k.body(), bound, out);
      bound.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<UVar> free_uvars(const Kind& k) {
  std::vector<UVar> out;
  collect_uvars(k, out);
  return out;
}

bool mentions_uvar(const Kind& k, UVar v) {
  switch (k.tag()) {
    case Kind::Tag::kUVar:
      return k.uvar_id() == v;
    case Kind::Tag::kArrow:
      return mentions_uvar(k.dom(), v) || mentions_uvar(k.cod(), v);
    case Kind::Tag::kForall:
      return mentions_uvar(k.body(), v);
    default:
      return false;
  }
}

std::vector<std::string> free_vars(const Kind& k) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_vars(k, bound, out);
  return out;
}

bool contains_forall(const Kind& k) {
  switch (k.tag()) {
    case Kind::Tag::kForall:
      return true;
    case Kind::Tag::kArrow:
      return contains_forall(k.dom()) || contains_forall(k.cod());
    default:
      return false;
  }
}

bool has_uvars(const Kind& k) {
  switch (k.tag()) {
    case Kind::Tag::kUVar:
      return true;
    case Kind::Tag::kArrow:
      return has_uvars(k.dom()) || has_uvars(k.cod());
    case Kind::Tag::kForall:
      return has_uvars(k.body());
    default:
      return false;
  }
}

bool is_closed(const Kind& k) { return !has_uvars(k) && free_vars(k).empty(); }

Kind substitute_uvars(const Kind& k,
                      const std::function<std::optional<Kind>(UVar)>& lookup) {
  switch (k.tag()) {
    case Kind::Tag::kUVar:
      if (auto r = lookup(k.uvar_id())) return *r;
      return k;
    case Kind::Tag::kArrow: {
      Kind d = substitute_uvars(k.dom(), lookup);
      Kind c = substitute_uvars(k.cod(), lookup);
      if (d == k.dom() && c == k.cod()) return k;
      return Kind::arrow(std::move(d), std::move(c));
    }
    case Kind::Tag::kForall: {
      Kind b = substitute_uvars(k.body(), lookup);
      if (b == k.body()) return k;
      return Kind::forall(k.name(), std::move(b));
    }
    default:
      return k;
  }
}

Kind substitute_vars(const Kind& k, const std::map<std::string, Kind>& subst) {
  if (subst.empty()) return k;
  switch (k.tag()) {
    case Kind::Tag::kVar: {
      auto it = subst.find(k.name());
      return it == subst.end() ? k : it->second;
    }
    case Kind::Tag::kArrow:
      return Kind::arrow(substitute_vars(k.dom(), subst),
                         substitute_vars(k.cod(), subst));
    case Kind::Tag::kForall: {
      if (!subst.contains(k.name())) {
        return Kind::forall(k.name(), substitute_vars(k.body(), subst));
      }
      auto inner = subst;
      inner.erase(k.name());
      return Kind::forall(k.name(), substitute_vars(k.body(), inner));
    }
    default:
      return k;
  }
}

std::vector<std::string> leading_binders(const Kind& k) {
  std::vector<std::string> out;
  const Kind* cur = &k;
  while (cur->is_forall()) {
    out.push_back(cur->name());
    cur = &cur->body();
  }
  return out;
}

Kind strip_foralls(const Kind& k) {
  const Kind* cur = &k;
  while (cur->is_forall()) cur = &cur->body();
  return *cur;
}

namespace {

Kind canonicalize_with(const Kind& k, std::map<std::string, std::string>& env,
                       int& counter) {
  switch (k.tag()) {
    case Kind::Tag::kVar: {
      auto it = env.find(k.name());
      return it == env.end() ? k : Kind::var(it->second);
    }
    case Kind::Tag::kArrow: {
      Kind d = canonicalize_with(k.dom(), env, counter);
      Kind c = canonicalize_with(k.cod(), env, counter);
      return Kind::arrow(std::move(d), std::move(c));
    }
    case Kind::Tag::kForall: {
      std::string fresh = "k" + std::to_string(++counter);
      auto saved = env.find(k.name()) == env.end()
                       ? std::optional<std::string>()
                       : std::optional<std::string>(env[k.name()]);
      env[k.name()] = fresh;
      Kind b = canonicalize_with(k.body(), env, counter);
      if (saved) {
        env[k.name()] = *saved;
      } else {
        env.erase(k.name());
      }
      return Kind::forall(std::move(fresh), std::move(b));
    }
    default:
      return k;
  }
}

bool alpha_with(const Kind& a, const Kind& b,
                std::vector<std::pair<std::string, std::string>>& env) {
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Kind::Tag::kStar:
      return true;
    case Kind::Tag::kUVar:
      return a.uvar_id() == b.uvar_id();
    case Kind::Tag::kArrow:
      return alpha_with(a.dom(), b.dom(), env) &&
             alpha_with(a.cod(), b.cod(), env);
    case Kind::Tag::kVar:
      // Innermost binding wins; a name bound on one side only is a mismatch.
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        const bool left = it->first == a.name();
        const bool right = it->second == b.name();
        if (left || right) return left && right;
      }
      return a.name() == b.name();
    case Kind::Tag::kForall: {
      env.emplace_back(a.name(), b.name());
      const bool ok = alpha_with(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

Kind canonicalize(const Kind& k) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return canonicalize_with(k, env, counter);
}

bool alpha_equivalent(const Kind& a, const Kind& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return alpha_with(a, b, env);
}

bool structural_less(const Kind& a, const Kind& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.tag() != b.tag()) return a.tag() < b.tag();
  switch (a.tag()) {
    case Kind::Tag::kStar:
      return false;
    case Kind::Tag::kArrow:
      if (!(a.dom() == b.dom())) return structural_less(a.dom(), b.dom());
      return structural_less(a.cod(), b.cod());
    case Kind::Tag::kVar:
      return a.name() < b.name();
    case Kind::Tag::kUVar:
      return a.uvar_id() < b.uvar_id();
    case Kind::Tag::kForall:
      if (a.name() != b.name()) return a.name() < b.name();
      return structural_less(a.body(), b.body());
  }
  return false;
}

}  // namespace kindred
