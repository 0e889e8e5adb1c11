#ifndef KINDRED_TRACE_HPP
#define KINDRED_TRACE_HPP

#include <cstddef>
#include <ostream>
#include <string_view>

#include "kindred/context.hpp"

namespace kindred {

/// Writes `STEP <n>: <op> | <context>` once per context transition.
/// A default-constructed Trace is disabled and costs nothing.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::ostream& out) : out_(&out) {}

  bool enabled() const { return out_ != nullptr; }
  void step(std::string_view op, const Context& ctx);
  std::size_t steps() const { return steps_; }

 private:
  std::ostream* out_ = nullptr;
  std::size_t steps_ = 0;
};

}  // namespace kindred

#endif  // KINDRED_TRACE_HPP
