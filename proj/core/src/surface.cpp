#include "kindred/surface.hpp"

#include <algorithm>
#include <utility>

namespace kindred {

std::string_view mode_name(Mode mode) {
  return mode == Mode::kH98 ? "h98" : "poly";
}

std::optional<Mode> mode_from_name(std::string_view name) {
  if (name == "h98") return Mode::kH98;
  if (name == "poly") return Mode::kPoly;
  return std::nullopt;
}

struct SurfaceType::Node {
  Tag tag;
  std::string name;
  std::optional<SurfaceType> lhs;
  std::optional<SurfaceType> rhs;
  Kind kind;
  SourcePos pos;
};

SurfaceType::SurfaceType(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

SurfaceType SurfaceType::var(std::string name, SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(
      Node{Tag::kVar, std::move(name), std::nullopt, std::nullopt, {}, pos}));
}

SurfaceType SurfaceType::con(std::string name, SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(
      Node{Tag::kCon, std::move(name), std::nullopt, std::nullopt, {}, pos}));
}

SurfaceType SurfaceType::app(SurfaceType fun, SurfaceType arg, SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(
      Node{Tag::kApp, {}, std::move(fun), std::move(arg), {}, pos}));
}

SurfaceType SurfaceType::arrow(SurfaceType dom, SurfaceType cod,
                               SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(
      Node{Tag::kArrow, {}, std::move(dom), std::move(cod), {}, pos}));
}

SurfaceType SurfaceType::forall(std::string binder, SurfaceType body,
                                SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(Node{
      Tag::kForall, std::move(binder), std::move(body), std::nullopt, {}, pos}));
}

SurfaceType SurfaceType::annot(SurfaceType type, Kind kind, SourcePos pos) {
  return SurfaceType(std::make_shared<const Node>(Node{
      Tag::kAnnot, {}, std::move(type), std::nullopt, std::move(kind), pos}));
}

SurfaceType::Tag SurfaceType::tag() const { return node_->tag; }
SourcePos SurfaceType::pos() const { return node_->pos; }

const std::string& SurfaceType::name() const {
  if (tag() != Tag::kVar && tag() != Tag::kCon && tag() != Tag::kForall) {
    throw InvariantViolation("name() of an unnamed type node");
  }
  return node_->name;
}

const SurfaceType& SurfaceType::fun() const {
  if (tag() != Tag::kApp) throw InvariantViolation("fun() of a non-App");
  return *node_->lhs;
}

const SurfaceType& SurfaceType::arg() const {
  if (tag() != Tag::kApp) throw InvariantViolation("arg() of a non-App");
  return *node_->rhs;
}

const SurfaceType& SurfaceType::dom() const {
  if (tag() != Tag::kArrow) throw InvariantViolation("dom() of a non-Arrow");
  return *node_->lhs;
}

const SurfaceType& SurfaceType::cod() const {
  if (tag() != Tag::kArrow) throw InvariantViolation("cod() of a non-Arrow");
  return *node_->rhs;
}

const SurfaceType& SurfaceType::body() const {
  if (tag() != Tag::kForall) throw InvariantViolation("body() of a non-Forall");
  return *node_->lhs;
}

const SurfaceType& SurfaceType::inner() const {
  if (tag() != Tag::kAnnot) throw InvariantViolation("inner() of a non-Annot");
  return *node_->lhs;
}

const Kind& SurfaceType::annotation() const {
  if (tag() != Tag::kAnnot) {
    throw InvariantViolation("annotation() of a non-Annot");
  }
  return node_->kind;
}

bool operator==(const SurfaceType& a, const SurfaceType& b) {
  if (a.node_ == b.node_) return true;
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case SurfaceType::Tag::kVar:
    case SurfaceType::Tag::kCon:
      return a.name() == b.name();
    case SurfaceType::Tag::kApp:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case SurfaceType::Tag::kArrow:
      return a.dom() == b.dom() && a.cod() == b.cod();
    case SurfaceType::Tag::kForall:
      return a.name() == b.name() && a.body() == b.body();
    case SurfaceType::Tag::kAnnot:
      return a.annotation() == b.annotation() && a.inner() == b.inner();
  }
  return false;
}

const DataDecl* Program::find(std::string_view name) const {
  auto it = std::find_if(decls.begin(), decls.end(),
                         [&](const DataDecl& d) { return d.name == name; });
  return it == decls.end() ? nullptr : &*it;
}

std::optional<std::size_t> Program::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (decls[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

void collect_tycons(const SurfaceType& t, std::vector<std::string>& out) {
  switch (t.tag()) {
    case SurfaceType::Tag::kCon:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) {
        out.push_back(t.name());
      }
      break;
    case SurfaceType::Tag::kApp:
      collect_tycons(t.fun(), out);
      collect_tycons(t.arg(), out);
      break;
    case SurfaceType::Tag::kArrow:
      collect_tycons(t.dom(), out);
      collect_tycons(t.cod(), out);
      break;
    case SurfaceType::Tag::kForall:
      collect_tycons(t.body(), out);
      break;
    case SurfaceType::Tag::kAnnot:
      collect_tycons(t.inner(), out);
      break;
    case SurfaceType::Tag::kVar:
      break;
  }
}

}  // namespace

std::vector<std::string> tycons_in(const SurfaceType& t) {
  std::vector<std::string> out;
  collect_tycons(t, out);
  return out;
}

}  // namespace kindred
