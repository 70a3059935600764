// Compares the serial and OpenMP orthogonal-group enumerations: same visit
// count, wall-clock for each, speedup. The parallel kernel partitions the
// backtracking tree by the image of the first basis vector.

#include <atomic>
#include <chrono>
#include <cstdio>

#include "cosieve/density.hpp"

using namespace cosieve;

namespace {

double seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_point(int N, int64_t ell, SplitClass model) {
  Field F(ell);
  QuadSpace V = model == SplitClass::Split ? QuadSpace::hyperbolic(F, N / 2)
                                           : QuadSpace::nonsplit(F, N / 2);
  EnumBudget budget;

  int64_t serial_count = 0;
  double t_serial = seconds([&] {
    enumerate_orthogonal(V, budget, [&](const MatF&) { ++serial_count; });
  });

  std::atomic<int64_t> parallel_count{0};
  double t_parallel = seconds([&] {
    enumerate_orthogonal_parallel(V, budget, 0, [&](int, const MatF&) {
      parallel_count.fetch_add(1, std::memory_order_relaxed);
    });
  });

  mpz_class expect = order_orthogonal(N, ell, model);
  bool ok = serial_count == parallel_count.load() && mpz_class(serial_count) == expect;
  std::printf("O(%d, F_%lld) %-8s |G|=%-10s serial %.3fs  parallel %.3fs  x%.2f  %s\n",
              N, static_cast<long long>(ell),
              model == SplitClass::Split ? "split" : "nonsplit",
              expect.get_str().c_str(), t_serial, t_parallel,
              t_parallel > 0 ? t_serial / t_parallel : 0.0,
              ok ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
  bench_point(4, 5, SplitClass::Split);
  bench_point(4, 5, SplitClass::NonSplit);
  bench_point(4, 7, SplitClass::Split);
  bench_point(4, 11, SplitClass::NonSplit);
  bench_point(4, 13, SplitClass::Split);
  return 0;
}
