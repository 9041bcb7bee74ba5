// Wall-clock comparison of the serial reference kernels against the OpenMP
// paths.  Results are required to be bit-identical; only the timing differs.

#include "latcoh/cohomology.hpp"
#include "latcoh/exactla.hpp"
#include "latcoh/lattice.hpp"
#include "latcoh/parallel.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string_view>

using namespace latcoh;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

IntMatrix random_matrix(std::mt19937_64& eng, long n, int bits) {
    IntMatrix m(n, n);
    mpz_class scale = 1;
    for (int i = 0; i < bits; i += 32) scale <<= 32;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m(i, j) = mpz_class(static_cast<long>(eng() % 1000) - 500) * scale;
    return m;
}

template <typename F> double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds(t0, std::chrono::steady_clock::now());
}

} // namespace

int main(int argc, char** argv) {
    const bool full = argc > 1 && std::string_view(argv[1]) == "--full";
    std::printf("latcoh kernel benchmark (%d threads available)\n", par::max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

    std::mt19937_64 eng(7);
    for (long n : {96L, 160L, 224L}) {
        IntMatrix a = random_matrix(eng, n, 96);
        IntMatrix b = random_matrix(eng, n, 96);
        IntMatrix r1, r2;
        double ts = timed([&] { r1 = mul_serial(a, b); });
        double tp = timed([&] { r2 = mul_parallel(a, b); });
        if (r1 != r2) {
            std::printf("FATAL: matrix product mismatch\n");
            return 1;
        }
        std::printf("matmul %ldx%ld (96-bit entries)%*s %9.3fs %9.3fs %7.2fx\n", n, n,
                    (int)(34 - 28 - std::to_string(n).size() * 2), "", ts, tp, ts / tp);
    }

    for (long n : {24L, 36L, 48L}) {
        GroupLattice m = random_lattice(CyclicGroup{n}, n, 11);
        TateProfile p1, p2;
        par::set_enabled(false);
        double ts = timed([&] { p1 = tate_profile_serial(m); });
        par::set_enabled(true);
        double tp = timed([&] { p2 = tate_profile(m); });
        bool same = p1.by_subgroup.size() == p2.by_subgroup.size();
        for (size_t i = 0; same && i < p1.by_subgroup.size(); ++i) {
            same = p1.by_subgroup[i].second.minus_one == p2.by_subgroup[i].second.minus_one &&
                   p1.by_subgroup[i].second.zero == p2.by_subgroup[i].second.zero &&
                   p1.by_subgroup[i].second.one == p2.by_subgroup[i].second.one;
        }
        if (!same) {
            std::printf("FATAL: tate profile mismatch\n");
            return 1;
        }
        std::printf("tate_profile C_%ld rank %ld %*s %9.3fs %9.3fs %7.2fx\n", n, n,
                    (int)(34 - 24 - std::to_string(n).size() * 2), "", ts, tp, ts / tp);
    }

    // The Smith elimination sweeps only outgrow their fork overhead on tall
    // inputs well above desk scale, so this case hides behind --full.
    if (full) {
        const long rows = 480, cols = 96;
        IntMatrix a(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                a(i, j) = static_cast<long>(eng() % 2001) - 1000;
        SmithDecomposition s0, s1;
        par::set_enabled(false);
        double ts = timed([&] { s0 = smith(a); });
        par::set_enabled(true);
        double tp = timed([&] { s1 = smith(a); });
        if (s0.d != s1.d || s0.u != s1.u || s0.v != s1.v) {
            std::printf("FATAL: smith mismatch\n");
            return 1;
        }
        std::printf("smith %ldx%ld (sweep gate %d)      %9.3fs %9.3fs %7.2fx\n", rows, cols,
                    par::kSweepThreshold, ts, tp, ts / tp);
    } else {
        std::printf("(run with --full to include the large smith-form comparison)\n");
    }
    return 0;
}
