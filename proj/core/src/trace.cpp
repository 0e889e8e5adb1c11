#include "kindred/trace.hpp"

namespace kindred {

void Trace::step(std::string_view op, const Context& ctx) {
  if (out_ == nullptr) return;
  *out_ << "STEP " << ++steps_ << ": " << op << " | " << pretty_context(ctx)
        << '\n';
}

}  // namespace kindred
