// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "expkern/filters.hpp"
#include "expkern/subdivision.hpp"

using namespace expkern;

namespace {

Impulse mask(std::size_t s, int width) {
  Impulse h(s);
  for (const auto& a : Window::box(s, -width, width).points()) {
    int t = 0;
    for (std::size_t j = 0; j < s; ++j) t += a[j] * static_cast<int>(j + 3);
    h.set(a, Complex(1.0 / (1 + std::abs(t)), 0.1 * t));
  }
  return h;
}

ExpPolySeq sequence(std::size_t s, int degree) {
  Point theta(s);
  for (std::size_t j = 0; j < s; ++j) theta[j] = std::polar(0.9 + 0.1 * static_cast<double>(j), 0.3);
  Poly p(s);
  for (const auto& a : monomials_up_to(s, degree)) p.add_term(a, Complex(1.0, 0.5 * a.total()));
  return ExpPolySeq::single(theta, p);
}

void BM_convolve(benchmark::State& st) {
  const Impulse h = mask(2, 3);
  const ExpPolySeq c = sequence(2, 3);
  const Window w = Window::box(2, 0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(convolve(h, c, w));
}

void BM_convolve_serial(benchmark::State& st) {
  const Impulse h = mask(2, 3);
  const ExpPolySeq c = sequence(2, 3);
  const Window w = Window::box(2, 0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::convolve(h, c, w));
}

void BM_kernel_residual(benchmark::State& st) {
  const std::vector<Impulse> h{mask(3, 1), mask(3, 2)};
  const ExpPolySeq c = sequence(3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernel_residual(h, c, static_cast<int>(st.range(0))));
}

void BM_kernel_residual_serial(benchmark::State& st) {
  const std::vector<Impulse> h{mask(3, 1), mask(3, 2)};
  const ExpPolySeq c = sequence(3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(serial::kernel_residual(h, c, static_cast<int>(st.range(0))));
}

void BM_subdivide(benchmark::State& st) {
  const Impulse a = mask(2, 2);
  const Dilation xi(IntMatrix{{1, 1}, {1, -1}});
  const ExpPolySeq c = sequence(2, 2);
  const Window w = Window::box(2, 0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(subdivide(a, xi, c, w));
}

void BM_subdivide_serial(benchmark::State& st) {
  const Impulse a = mask(2, 2);
  const Dilation xi(IntMatrix{{1, 1}, {1, -1}});
  const ExpPolySeq c = sequence(2, 2);
  const Window w = Window::box(2, 0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::subdivide(a, xi, c, w));
}

}  // namespace

BENCHMARK(BM_convolve)->Arg(32)->Arg(128);
BENCHMARK(BM_convolve_serial)->Arg(32)->Arg(128);
BENCHMARK(BM_kernel_residual)->Arg(4)->Arg(12);
BENCHMARK(BM_kernel_residual_serial)->Arg(4)->Arg(12);
BENCHMARK(BM_subdivide)->Arg(32)->Arg(128);
BENCHMARK(BM_subdivide_serial)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
