#include "latcoh/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latcoh::par {

namespace {

bool initial_enabled() {
#ifdef _OPENMP
    if (const char* v = std::getenv("LATCOH_SERIAL"); v && v[0] == '1') return false;
    return true;
#else
    return false;
#endif
}

std::atomic<bool> g_enabled{initial_enabled()};

} // namespace

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace latcoh::par
