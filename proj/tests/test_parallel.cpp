#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latcoh/cohomology.hpp"
#include "latcoh/exactla.hpp"
#include "latcoh/flabby.hpp"
#include "latcoh/lattice.hpp"
#include "latcoh/parallel.hpp"

#include <random>

using namespace latcoh;

namespace {

IntMatrix random_matrix(std::mt19937_64& eng, long r, long c, long bound = 9) {
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j)
            m(i, j) = static_cast<long>(eng() % (2 * bound + 1)) - bound;
    return m;
}

struct SerialGuard {
    bool saved = par::enabled();
    ~SerialGuard() { par::set_enabled(saved); }
};

} // namespace

TEST_CASE("matrix product: OpenMP path is bit-identical to the serial reference") {
    std::mt19937_64 eng(1);
    for (long n : {3L, 17L, 64L}) {
        IntMatrix a = random_matrix(eng, n, n, 1000);
        IntMatrix b = random_matrix(eng, n, n, 1000);
        CHECK(mul_serial(a, b) == mul_parallel(a, b));
    }
}

TEST_CASE("smith form is independent of the parallel switch") {
    SerialGuard guard;
    std::mt19937_64 eng(2);
    for (int iter = 0; iter < 8; ++iter) {
        IntMatrix a = random_matrix(eng, 50 + static_cast<long>(eng() % 30), 60, 5);
        par::set_enabled(false);
        SmithDecomposition s0 = smith(a);
        par::set_enabled(true);
        SmithDecomposition s1 = smith(a);
        CHECK(s0.u == s1.u);
        CHECK(s0.d == s1.d);
        CHECK(s0.v == s1.v);
    }
}

TEST_CASE("tate profile: parallel evaluation matches serial, per subgroup") {
    SerialGuard guard;
    std::mt19937_64 eng(3);
    for (int iter = 0; iter < 6; ++iter) {
        const long n = std::vector<long>{4, 6, 12}[eng() % 3];
        GroupLattice m = random_lattice(CyclicGroup{n}, 4 + static_cast<long>(eng() % 4),
                                        static_cast<unsigned long>(eng()));
        par::set_enabled(true);
        TateProfile pp = tate_profile(m);
        TateProfile ps = tate_profile_serial(m);
        REQUIRE(pp.by_subgroup.size() == ps.by_subgroup.size());
        for (size_t i = 0; i < pp.by_subgroup.size(); ++i) {
            CHECK(pp.by_subgroup[i].first == ps.by_subgroup[i].first);
            CHECK(pp.by_subgroup[i].second.minus_one == ps.by_subgroup[i].second.minus_one);
            CHECK(pp.by_subgroup[i].second.zero == ps.by_subgroup[i].second.zero);
            CHECK(pp.by_subgroup[i].second.one == ps.by_subgroup[i].second.one);
        }
    }
}

TEST_CASE("full pipeline output is independent of the parallel switch") {
    SerialGuard guard;
    GroupLattice m = random_lattice(CyclicGroup{6}, 6, 2718);

    par::set_enabled(false);
    Classification c0 = classify(m);
    PhiDecomposition d0 = phi_decompose(m);
    par::set_enabled(true);
    Classification c1 = classify(m);
    PhiDecomposition d1 = phi_decompose(m);

    CHECK(c0.is_flabby == c1.is_flabby);
    CHECK(c0.is_coflabby == c1.is_coflabby);
    REQUIRE(d0.components.size() == d1.components.size());
    for (size_t i = 0; i < d0.components.size(); ++i) {
        CHECK(d0.components[i].z_rank == d1.components[i].z_rank);
        CHECK(d0.components[i].torsion == d1.components[i].torsion);
        CHECK(d0.components[i].torsion_free.sigma == d1.components[i].torsion_free.sigma);
    }
}
