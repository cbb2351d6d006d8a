// Benchmark comparing the serial reference implementations against the
// OpenMP-parallel kernels: certificate ledger evaluation and topology
// enumeration.
#include <chrono>
#include <cstdio>

#include "bubbles/certificates.hpp"
#include "bubbles/topology.hpp"

using namespace bubbles;
using clk = std::chrono::steady_clock;

static double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  // warm up (ledger construction is lazy)
  (void)builtin_ledger();

  {
    auto t0 = clk::now();
    CertReport serial = check_ledger_serial(1);
    auto t1 = clk::now();
    CertReport parallel = check_ledger(1, true);
    auto t2 = clk::now();
    bool same = serial.items.size() == parallel.items.size();
    for (size_t i = 0; same && i < serial.items.size(); ++i)
      same = serial.items[i].name == parallel.items[i].name &&
             serial.items[i].status == parallel.items[i].status &&
             serial.items[i].lo == parallel.items[i].lo &&
             serial.items[i].hi == parallel.items[i].hi;
    std::printf("ledger   serial %8.4fs  parallel %8.4fs  speedup %5.2fx  identical %s\n",
                seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2),
                same ? "yes" : "NO");
  }

  for (auto [n, m] : {std::pair{4, 4}, std::pair{4, 5}}) {
    auto t0 = clk::now();
    EnumerationResult serial = enumerate_topologies(n, m, PredicateSet::paper(), false);
    auto t1 = clk::now();
    EnumerationResult parallel = enumerate_topologies(n, m, PredicateSet::paper(), true);
    auto t2 = clk::now();
    bool same = serial.kept == parallel.kept && serial.excluded_by == parallel.excluded_by;
    std::printf("enum %d,%d serial %8.4fs  parallel %8.4fs  speedup %5.2fx  identical %s\n",
                n, m, seconds(t0, t1), seconds(t1, t2), seconds(t0, t1) / seconds(t1, t2),
                same ? "yes" : "NO");
  }
  return 0;
}
