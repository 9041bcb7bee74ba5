#pragma once

namespace latcoh::par {

// Runtime switch for the OpenMP kernels.  All parallel paths produce
// bit-identical results to the serial reference; the switch exists so tests
// can compare the two and so small workloads can skip thread startup.
bool enabled();
void set_enabled(bool on);

// Number of worker threads the kernels may use (1 when OpenMP is absent).
int max_threads();

// Heuristic size gates: parallel regions are skipped below these sizes.
// Matrix products win early (coarse work per row); the Smith elimination
// sweeps are finer grained and only pay off on larger matrices.
inline constexpr int kRowThreshold = 48;
inline constexpr int kSweepThreshold = 128;

} // namespace latcoh::par
