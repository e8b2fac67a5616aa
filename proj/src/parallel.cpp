#include "squarem/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace squarem {

namespace {
std::atomic<int> g_override{0};

int from_environment() {
  const char* env = std::getenv("BENCH_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(env, &used);
    return (used == std::string(env).size() && n >= 1) ? n : 0;
  } catch (...) {
    return 0;
  }
}
}  // namespace

int configured_threads() {
  if (const int o = g_override.load(); o > 0) return o;
  static const int env = from_environment();
  if (env > 0) return env;
  return std::max(1, omp_get_max_threads());
}

void set_thread_override(int threads) { g_override.store(std::max(0, threads)); }

int threads_for(long work, long min_work_per_thread) {
  const long per = std::max(1L, min_work_per_thread);
  const long cap = std::max(1L, work / per);
  return static_cast<int>(std::min<long>(configured_threads(), cap));
}

}  // namespace squarem
