#include <string>

#include "kindred/surface.hpp"

namespace kindred {
namespace {

// Precedence contexts: 0 = anywhere, 1 = left of an arrow, 2 = argument.
void print_kind(const Kind& k, int prec, std::string& out) {
  switch (k.tag()) {
    case Kind::Tag::kStar:
      out += '*';
      return;
    case Kind::Tag::kVar:
      out += k.name();
      return;
    case Kind::Tag::kUVar:
      out += '^';
      out += std::to_string(k.uvar_id().id);
      return;
    case Kind::Tag::kArrow:
      if (prec >= 1) out += '(';
      print_kind(k.dom(), 1, out);
      out += " -> ";
      print_kind(k.cod(), 0, out);
      if (prec >= 1) out += ')';
      return;
    case Kind::Tag::kForall: {
      if (prec >= 1) out += '(';
      out += "forall";
      const Kind* cur = &k;
      while (cur->is_forall()) {
        out += ' ';
        out += cur->name();
        cur = &cur->body();
      }
      out += ". ";
      print_kind(*cur, 0, out);
      if (prec >= 1) out += ')';
      return;
    }
  }
}

void print_type(const SurfaceType& t, int prec, std::string& out) {
  using Tag = SurfaceType::Tag;
  switch (t.tag()) {
    case Tag::kVar:
    case Tag::kCon:
      out += t.name();
      return;
    case Tag::kAnnot:
      out += '(';
      print_type(t.inner(), 0, out);
      out += " :: ";
      print_kind(t.annotation(), 0, out);
      out += ')';
      return;
    case Tag::kApp:
      if (prec >= 2) out += '(';
      print_type(t.fun(), 1, out);
      out += ' ';
      print_type(t.arg(), 2, out);
      if (prec >= 2) out += ')';
      return;
    case Tag::kArrow:
      if (prec >= 1) out += '(';
      print_type(t.dom(), 1, out);
      out += " -> ";
      print_type(t.cod(), 0, out);
      if (prec >= 1) out += ')';
      return;
    case Tag::kForall: {
      if (prec >= 1) out += '(';
      out += "forall";
      const SurfaceType* cur = &t;
      while (cur->tag() == Tag::kForall) {
        out += ' ';
        out += cur->name();
        cur = &cur->body();
      }
      out += ". ";
      print_type(*cur, 0, out);
      if (prec >= 1) out += ')';
      return;
    }
  }
}

}  // namespace

std::string pretty_kind(const Kind& k) {
  std::string out;
  print_kind(k, 0, out);
  return out;
}

std::string pretty_type(const SurfaceType& t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

std::string pretty_decl(const DataDecl& d) {
  std::string out = "data " + d.name;
  for (const Param& p : d.params) {
    out += ' ';
    if (p.annotation) {
      out += '(' + p.name + " :: " + pretty_kind(*p.annotation) + ')';
    } else {
      out += p.name;
    }
  }
  for (std::size_t i = 0; i < d.ctors.size(); ++i) {
    out += i == 0 ? " = " : " | ";
    out += d.ctors[i].name;
    for (const SurfaceType& arg : d.ctors[i].args) {
      out += ' ';
      print_type(arg, 2, out);
    }
  }
  return out;
}

std::string pretty_program(const Program& p) {
  std::string out;
  for (const DataDecl& d : p.decls) {
    if (!out.empty()) out += '\n';
    if (auto it = p.sigs.find(d.name); it != p.sigs.end()) {
      out += "sig " + d.name + " :: " + pretty_kind(it->second.kind) + '\n';
    }
    out += pretty_decl(d);
  }
  return out;
}

}  // namespace kindred
