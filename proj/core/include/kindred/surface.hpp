#ifndef KINDRED_SURFACE_HPP
#define KINDRED_SURFACE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kindred/diagnostic.hpp"
#include "kindred/kind.hpp"

namespace kindred {

enum class Mode { kH98, kPoly };

std::string_view mode_name(Mode mode);
std::optional<Mode> mode_from_name(std::string_view name);

/// Types appearing in constructor arguments.
///
///   Var | Con | App(fun, arg) | Arrow(dom, cod) | Forall(var, body) | Annot
///
/// Forall and Annot only occur in poly mode. Equality ignores positions.
class SurfaceType {
 public:
  enum class Tag : std::uint8_t { kVar, kCon, kApp, kArrow, kForall, kAnnot };

  static SurfaceType var(std::string name, SourcePos pos = {});
  static SurfaceType con(std::string name, SourcePos pos = {});
  static SurfaceType app(SurfaceType fun, SurfaceType arg, SourcePos pos = {});
  static SurfaceType arrow(SurfaceType dom, SurfaceType cod,
                           SourcePos pos = {});
  static SurfaceType forall(std::string binder, SurfaceType body,
                            SourcePos pos = {});
  static SurfaceType annot(SurfaceType type, Kind kind, SourcePos pos = {});

  Tag tag() const;
  SourcePos pos() const;

  /// Var, Con, and Forall binder.
  const std::string& name() const;
  const SurfaceType& fun() const;
  const SurfaceType& arg() const;
  const SurfaceType& dom() const;
  const SurfaceType& cod() const;
  const SurfaceType& body() const;
  /// The annotated type of an Annot node.
  const SurfaceType& inner() const;
  const Kind& annotation() const;

  friend bool operator==(const SurfaceType& a, const SurfaceType& b);

 private:
  struct Node;
  explicit SurfaceType(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct Param {
  std::string name;
  std::optional<Kind> annotation;
  SourcePos pos;

  friend bool operator==(const Param& a, const Param& b) {
    return a.name == b.name && a.annotation == b.annotation;
  }
};

struct DataCon {
  std::string name;
  std::vector<SurfaceType> args;
  SourcePos pos;

  friend bool operator==(const DataCon& a, const DataCon& b) {
    return a.name == b.name && a.args == b.args;
  }
};

struct DataDecl {
  std::string name;
  std::vector<Param> params;
  std::vector<DataCon> ctors;
  SourcePos pos;

  friend bool operator==(const DataDecl& a, const DataDecl& b) {
    return a.name == b.name && a.params == b.params && a.ctors == b.ctors;
  }
};

struct Signature {
  Kind kind;
  SourcePos pos;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.kind == b.kind;
  }
};

struct Program {
  std::vector<DataDecl> decls;
  std::map<std::string, Signature> sigs;

  const DataDecl* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Throws KindError (PARSE_ERROR, DUPLICATE_*, ANNOTATION_IN_H98,
/// ORPHAN_SIGNATURE).
Program parse_program(std::string_view text, Mode mode);
Kind parse_kind(std::string_view text, Mode mode);
SurfaceType parse_type(std::string_view text, Mode mode);

/// One line per declaration, a signature on the line before its
/// declaration, no trailing newline.
std::string pretty_program(const Program& p);
std::string pretty_decl(const DataDecl& d);
std::string pretty_type(const SurfaceType& t);
/// Unification variables print as `^n`.
std::string pretty_kind(const Kind& k);

/// Type-constructor names mentioned in `t`, first occurrence order.
std::vector<std::string> tycons_in(const SurfaceType& t);

}  // namespace kindred

#endif  // KINDRED_SURFACE_HPP
