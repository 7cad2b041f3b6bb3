#include "quench/monotone.hpp"

#include <atomic>
#include <cstdio>

namespace quench {

namespace {
std::atomic<double> g_max_violation{0.0};
}

double max_monotone_violation() { return g_max_violation.load(); }

void reset_monotone_violation() { g_max_violation.store(0.0); }

void record_monotone_violation(double v) {
  double cur = g_max_violation.load();
  while (v > cur && !g_max_violation.compare_exchange_weak(cur, v)) {
  }
}

namespace detail {

std::string describe(const IterationReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "iterations=%zu update=%.3e residual=%.3e monotone_violation=%.3e",
                r.iterations, r.final_update, r.final_residual, r.monotone_violation);
  return buf;
}

}  // namespace detail

}  // namespace quench
