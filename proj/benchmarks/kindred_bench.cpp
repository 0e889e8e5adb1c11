#include <benchmark/benchmark.h>

#include <string>

#include "kindred/h98.hpp"
#include "kindred/poly.hpp"
#include "kindred/surface.hpp"
#include "kindred/unify.hpp"

namespace kindred {
namespace {

// n declarations, each referring to the next; the last one closes the
// cycle, so the whole program is one group.
std::string chain(int n, bool cyclic) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    text += "data T" + std::to_string(i) + " f a = MkT" + std::to_string(i) +
            " (f a)";
    if (cyclic || next != 0) {
      text += " (T" + std::to_string(next) + " f a)";
    }
    text += "\n";
  }
  return text;
}

void BM_Parse(benchmark::State& state) {
  const std::string text = chain(static_cast<int>(state.range(0)), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_program(text, Mode::kH98));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Parse)->Range(8, 512);

void BM_H98(benchmark::State& state) {
  const Program p =
      parse_program(chain(static_cast<int>(state.range(0)), state.range(1)),
                    Mode::kH98);
  for (auto _ : state) benchmark::DoNotOptimize(run_h98(p));
}
BENCHMARK(BM_H98)->ArgsProduct({{8, 64, 256}, {0, 1}});

void BM_Poly(benchmark::State& state) {
  const Program p =
      parse_program(chain(static_cast<int>(state.range(0)), state.range(1)),
                    Mode::kPoly);
  for (auto _ : state) benchmark::DoNotOptimize(run_poly(p));
}
BENCHMARK(BM_Poly)->ArgsProduct({{8, 64, 256}, {0, 1}});

// ^0 ~ (^1 -> ^2 -> ... -> *) with every variable to the right of ^0, so
// each one is promoted.
void BM_UnifyPromotion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Context base;
  const UVar target = base.fresh();
  std::vector<Kind> doms;
  for (int i = 0; i < n; ++i) doms.push_back(Kind::uvar(base.fresh()));
  const Kind rhs = Kind::arrows(doms, Kind::star());
  for (auto _ : state) {
    Context ctx = base;
    unify_in_place(ctx, Kind::uvar(target), rhs);
    benchmark::DoNotOptimize(ctx);
  }
}
BENCHMARK(BM_UnifyPromotion)->Range(4, 256);

}  // namespace
}  // namespace kindred

BENCHMARK_MAIN();
