// Compares the OpenMP kernels with their serial reference implementations:
// lattice-point enumeration, batch partition-function evaluation, and
// multigraded Betti numbers. --smoke shrinks the sizes so the test suite can
// run the same binary as a fast agreement check.

#include <omp.h>

#include <cstdio>
#include <cstring>
#include <utility>
#include <vector>

#include "vpart/betti.hpp"
#include "vpart/matrix.hpp"
#include "vpart/monomial.hpp"
#include "vpart/parallel.hpp"
#include "vpart/partition.hpp"
#include "vpart/polyhedron.hpp"

namespace {

using namespace vpart;

// Edge ideal of the complete graph on n vertices: all squarefree quadrics.
monomial::MonomialIdeal complete_graph_edges(int n) {
  std::vector<monomial::Expo> gens;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      monomial::Expo e(size_t(n), 0);
      e[size_t(a)] = e[size_t(b)] = 1;
      gens.push_back(e);
    }
  return monomial::MonomialIdeal(n, std::move(gens));
}

polyhedra::Polyhedron box3(long k) {
  polyhedra::Polyhedron p;
  p.dim = 3;
  p.ineq_c = linalg::IntMatrix(6, 3);
  p.ineq_b = IntVec(6, Int(0));
  for (int j = 0; j < 3; ++j) {
    p.ineq_c.at(j, j) = -1;
    p.ineq_c.at(3 + j, j) = 1;
    p.ineq_b[size_t(3 + j)] = k;
  }
  return p;
}

template <class F>
double timed(F&& f) {
  const double t0 = omp_get_wtime();
  f();
  return omp_get_wtime() - t0;
}

int report(const char* name, long size, double serial_s, double parallel_s, bool agree) {
  std::printf("%-12s %10ld %10.3f %10.3f %9.2f %7s\n", name, size, serial_s, parallel_s,
              serial_s / (parallel_s > 1e-9 ? parallel_s : 1e-9), agree ? "yes" : "NO");
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "--smoke")) {
      smoke = true;
    } else {
      std::fprintf(stderr, "usage: vpart_bench [--smoke]\n");
      return 2;
    }
  }

  std::printf("threads = %d\n", parallel::max_threads());
  std::printf("%-12s %10s %10s %10s %9s %7s\n", "kernel", "size", "serial_s", "parallel_s",
              "speedup", "agree");
  int failures = 0;

  {
    const long k = smoke ? 9 : 100;
    const auto p = box3(k);
    std::vector<IntVec> serial, parallel;
    const double ts = timed([&] { serial = polyhedra::enumerate_lattice_points_serial(p); });
    const double tp = timed([&] { parallel = polyhedra::enumerate_lattice_points(p); });
    failures += report("enumerate", long(serial.size()), ts, tp, serial == parallel);
  }

  {
    const partition::WeightSystem w({Int(3), Int(5), Int(8), Int(9)});
    const long t_hi = smoke ? 12 : 60;
    std::vector<std::pair<Int, Int>> grid;
    for (long t = 1; t <= t_hi; ++t)
      for (long mu = 3 * t; mu <= 9 * t; ++mu) grid.emplace_back(Int(mu), Int(t));
    std::vector<Int> serial, parallel;
    const double ts = timed([&] { serial = partition::evaluate_many_serial(w, grid); });
    const double tp = timed([&] { parallel = partition::evaluate_many(w, grid); });
    failures += report("evaluate", long(grid.size()), ts, tp, serial == parallel);
  }

  {
    const auto i = complete_graph_edges(smoke ? 6 : 10);
    betti::MultigradedBetti serial, parallel;
    const double ts = timed([&] { serial = betti::multigraded_betti_serial(i); });
    const double tp = timed([&] { parallel = betti::multigraded_betti(i); });
    failures += report("betti", long(i.generators().size()), ts, tp, serial == parallel);
  }

  return failures == 0 ? 0 : 1;
}
