// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.

#include "latcoh/cli.hpp"
#include "latcoh/cohomology.hpp"
#include "latcoh/dedekind.hpp"
#include "latcoh/document.hpp"
#include "latcoh/flabby.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace latcoh;

namespace {

struct Outcome {
    std::string name;
    bool pass = true;
    std::string detail;
};

std::vector<Outcome> g_outcomes;

struct Checker {
    Outcome o;
    std::ostringstream notes;
    explicit Checker(std::string name) { o.name = std::move(name); }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            o.pass = false;
            if (!o.detail.empty()) o.detail += "; ";
            o.detail += what;
        }
    }
    void finish() {
        if (!notes.str().empty()) {
            if (!o.detail.empty()) o.detail += "; ";
            o.detail += notes.str();
        }
        g_outcomes.push_back(o);
        std::printf("%s  %s%s%s\n", o.pass ? "PASS" : "FAIL", o.name.c_str(),
                    o.detail.empty() ? "" : " -- ", o.detail.c_str());
        std::fflush(stdout);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1, 2, 4 share this corpus: 200 seeded lattices over C_2, C_3,
// C_4, C_6 with z_rank <= 6.
std::vector<GroupLattice> small_corpus() {
    std::vector<GroupLattice> corpus;
    unsigned long seed = 1000;
    for (long n : {2, 3, 4, 6})
        for (int i = 0; i < 50; ++i, ++seed)
            corpus.push_back(random_lattice(CyclicGroup{n}, 1 + (i % 6), seed));
    return corpus;
}

std::vector<long> torsion_longs(const AbelianInvariants& inv) {
    std::vector<long> out;
    for (const auto& t : inv.torsion) out.push_back(t.get_si());
    return out;
}

void criterion_1_and_2(const std::vector<GroupLattice>& corpus) {
    Checker c1("criterion 1: h_one cocycle route == 2-periodic resolution route "
               "(200 lattices, exact)");
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0;
    for (const auto& m : corpus) {
        for (const auto& h : subgroups(m.group)) {
            TateModule a = h_one_cocycle(m, h);
            TateModule b = h_one_resolution(m, h);
            ++checked;
            if (!(a == b)) {
                c1.require(false, "route mismatch over C_" + std::to_string(m.group.order));
                break;
            }
        }
    }
    double dt = seconds_since(t0);
    c1.require(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    c1.notes << checked << " subgroup computations in " << dt << "s";
    c1.finish();

    Checker c2("criterion 2: flabby flag == coflabby flag on the full corpus (exact)");
    for (const auto& m : corpus) {
        Classification cls = classify(m);
        c2.require(cls.is_flabby == cls.is_coflabby, "flag disagreement");
    }
    c2.finish();
}

void criterion_3() {
    Checker c("criterion 3: H^1(pi, I_Zpi) = Z/n for all n <= 12 (exact)");
    for (long n = 1; n <= 12; ++n) {
        GroupLattice aug = augmentation_ideal(BaseRing::integers(), CyclicGroup{n});
        TateModule t = h_one(aug, subgroup_of_order(CyclicGroup{n}, n));
        if (n == 1) {
            c.require(t.is_trivial(), "n=1 should vanish");
        } else {
            c.require(torsion_longs(t.invariants) == std::vector<long>{n},
                      "n=" + std::to_string(n) + " gave " + t.invariants.to_string());
        }
    }
    c.finish();
}

void criterion_4(const std::vector<GroupLattice>& corpus) {
    Checker c("criterion 4: flabby resolution contract on the corpus; explicit "
              "Phi_n-kernel sequence for n in {4,6,8,9,12} (exact)");
    for (const auto& m : corpus) {
        try {
            Resolution r = flabby_resolution(m); // validates on construction
            c.require(r.middle.is_permutation_record(), "middle lost its permutation record");
            c.require(classify(r.outer).is_flabby, "outer term not flabby");
        } catch (const std::exception& e) {
            c.require(false, std::string("resolution failed: ") + e.what());
            break;
        }
    }

    // The paper's sequence exists over cyclic p-groups; composite n in the
    // list are checked over each Sylow subgroup (see the project notes), and
    // the resolution contract is additionally verified on (Zpi/Phi_n)_0 over
    // C_n itself.
    for (long n : {4, 6, 8, 9, 12}) {
        std::vector<long> parts;
        for (long p : prime_factors(n)) {
            long q = 1;
            long nn = n;
            while (nn % p == 0) q *= p, nn /= p;
            parts.push_back(q);
        }
        for (long prime_power : parts) {
            try {
                ExplicitSequence seq = phi_kernel_sequence(prime_power);
                c.require(seq.outer.is_permutation_record(),
                          "cokernel not permutation at n=" + std::to_string(prime_power));
                c.require(poly_eval_matrix(cyclotomic(prime_power).coeffs, seq.inner.sigma)
                              .is_zero(),
                          "inner term is not Zpi/Phi_n at n=" + std::to_string(prime_power));
                c.require(cokernel_invariants(seq.surject.matrix).is_trivial() &&
                              mul(seq.surject.matrix, seq.inject.matrix).is_zero() &&
                              spans_equal(kernel_basis(seq.surject.matrix), seq.inject.matrix),
                          "sequence not exact at n=" + std::to_string(prime_power));
            } catch (const std::exception& e) {
                c.require(false, std::string("explicit sequence failed: ") + e.what());
            }
        }
        try {
            GroupLattice inner =
                phi_quotient(regular_lattice(BaseRing::integers(), CyclicGroup{n}), n)
                    .torsion_free;
            Resolution r = flabby_resolution(inner);
            c.require(classify(r.outer).is_flabby,
                      "resolution of (Zpi/Phi_n)_0 failed at n=" + std::to_string(n));
        } catch (const std::exception& e) {
            c.require(false, std::string("resolution of quotient failed: ") + e.what());
        }
    }
    c.finish();
}

void criterion_5() {
    Checker c("criterion 5: flabby C_p lattices match the permutation profile, "
              "p in {2,3,5}, 100 lattices each (exact)");
    for (long p : {2, 3, 5}) {
        long found = 0;
        unsigned long seed = 50000 + static_cast<unsigned long>(p);
        while (found < 100) {
            GroupLattice m =
                random_lattice(CyclicGroup{p}, 1 + static_cast<long>(seed % 8), seed);
            ++seed;
            GroupLattice local = m;
            local.base = BaseRing::localized(p);
            Classification cls = classify(local);
            if (!cls.is_flabby) continue;
            ++found;

            CpRecognition rec = permutation_recognize_cp(m, p);
            if (!std::holds_alternative<CpDecomposition>(rec)) {
                c.require(false, "flabby lattice not recognized at p=" + std::to_string(p));
                continue;
            }
            const auto& d = std::get<CpDecomposition>(rec);
            const long a = d.trivial_multiplicity, cc = d.regular_multiplicity;
            const Subgroup full = subgroup_of_order(CyclicGroup{p}, p);
            const long fixed = fixed_sublattice(local, full).cols();
            c.require(m.z_rank == a + p * cc, "rank bookkeeping failed");
            c.require(fixed == a + cc, "fixed-rank bookkeeping failed");
            c.require(tate_minus_one(local, full).is_trivial(), "H^-1 not zero");
            mpz_class h0_order = tate_zero(local, full).invariants.torsion_order();
            mpz_class expect = 1;
            for (long i = 0; i < a; ++i) expect *= p;
            c.require(h0_order == expect, "|H^0| != p^a");
        }
    }
    c.finish();
}

void criterion_6() {
    for (long p : {3L, 5L}) {
        Checker c("criterion 6: Example 4.3 reproduction at p = " + std::to_string(p) +
                  " (exact, < 5 s)");
        auto t0 = std::chrono::steady_clock::now();
        CounterexampleReport rep = counterexample_4_3(p);
        double dt = seconds_since(t0);
        c.require(rep.hypotheses_violated, "ramification not detected");
        c.require(rep.h_minus1_m_blocks == std::vector<long>{1},
                  "H^-1(pi,M) is not one block of size 1");
        for (long b : rep.h0_p_blocks)
            c.require(b == p - 1, "H^0(pi,P) block of size " + std::to_string(b));
        c.require(rep.h0_trivial_reference_blocks == std::vector<long>{p - 1},
                  "reference H^0(pi,R) block pattern wrong");
        c.require(rep.length_additivity_holds, "Tate length additivity failed");
        c.require(rep.h0_e_length % (p - 1) == 1, "total length not 1 mod p-1");
        c.require(rep.not_invertible, "verdict is not NotInvertible");
        c.require(dt < 5.0, "runtime " + std::to_string(dt) + "s exceeds 5s");
        c.finish();
    }

    Checker g("criterion 6 (gaussian): Example 4.3 variant over Z[sqrt(-1)] "
              "(exact, < 5 s)");
    auto t0 = std::chrono::steady_clock::now();
    CounterexampleReport rep = counterexample_4_3(2, true);
    double dt = seconds_since(t0);
    g.require(rep.hypotheses_violated, "ramification not detected");
    g.require(rep.length_additivity_holds, "Tate length additivity failed");
    g.require(rep.h_minus1_m_blocks == std::vector<long>{1},
              "H^-1(pi,M) is not one block of size 1");
    // Invertible lattices over the Gaussian base have even-length blocks.
    for (long b : rep.h0_p_blocks)
        g.require(b % 2 == 0, "H^0(pi,P) block of odd size " + std::to_string(b));
    for (long b : rep.h0_trivial_reference_blocks)
        g.require(b % 2 == 0, "reference block of odd size " + std::to_string(b));
    g.require(rep.h0_e_length % 2 == 1,
              "total length " + std::to_string(rep.h0_e_length) + " is 0 mod 2");
    g.require(rep.not_invertible, "verdict is not NotInvertible");
    g.require(dt < 5.0, "runtime exceeds 5s");
    g.finish();
}

void criterion_7() {
    Checker c("criterion 7: Dedekind criterion p-maximal for all p | n, n <= 40; "
              "negative control X^2+3 at p=2 (exact)");
    for (long n = 1; n <= 40; ++n) {
        MaximalityReport rep = verify_theorem_3_3(n);
        c.require(rep.all_maximal(), "failure at n=" + std::to_string(n));
    }
    DedekindVerdict neg = dedekind_criterion(PolyZ{3, 0, 1}, 2);
    c.require(!neg.maximal, "X^2+3 reported 2-maximal");
    c.finish();
}

void criterion_8(const std::vector<GroupLattice>& corpus) {
    Checker c("criterion 8: phi_decompose rank identity and trivial Steinitz data, "
              "corpus over C_n, n <= 12 (exact)");
    std::vector<GroupLattice> extended = corpus;
    unsigned long seed = 90000;
    for (long n = 1; n <= 12; ++n)
        for (int i = 0; i < 6; ++i, ++seed)
            extended.push_back(random_lattice(CyclicGroup{n}, 1 + (i % 6), seed));

    for (const auto& m : extended) {
        PhiDecomposition dec = phi_decompose(m);
        c.require(dec.rank_identity_holds,
                  "rank identity failed over C_" + std::to_string(m.group.order));
        long sum = 0;
        for (const auto& comp : dec.components) {
            sum += euler_phi(comp.d) * comp.zeta_rank;
            c.require(comp.steinitz.supported && comp.steinitz.trivial_class,
                      "Steinitz datum not trivial at d=" + std::to_string(comp.d));
        }
        c.require(sum == m.z_rank, "sum phi(d) rank_d != z_rank");
    }
    c.finish();
}

std::string run_inproc(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return std::to_string(code) + "\n" + out.str();
}

void criterion_9() {
    Checker c("criterion 9: byte-identical structured reports for identical "
              "input and seed");
    const std::vector<std::vector<std::string>> cases = {
        {"cohomology", "--builtin", "regular:6", "--format", "structured", "--seed", "7"},
        {"cohomology", "--builtin", "augmentation:4", "--format", "structured"},
        {"classify", "--builtin", "zeta-twist:3", "--format", "structured"},
        {"resolve", "--builtin", "augmentation:3", "--format", "structured"},
        {"decompose", "--builtin", "regular:12", "--format", "structured"},
        {"dedekind", "--n", "36", "--format", "structured"},
        {"example-4-3", "--p", "3", "--format", "structured"},
    };
    for (const auto& args : cases) {
        std::string a = run_inproc(args);
        std::string b = run_inproc(args);
        c.require(a == b, "in-process rerun differs for subcommand " + args[0]);
    }

    // When the driver binary location is known, also compare two real
    // subprocess invocations byte for byte.
    if (const char* cli = std::getenv("LATCOH_CLI")) {
        auto capture = [&](const std::string& cmd) {
            std::string data;
            if (FILE* pipe = popen(cmd.c_str(), "r")) {
                char buf[4096];
                size_t got;
                while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) data.append(buf, got);
                pclose(pipe);
            }
            return data;
        };
        std::string cmd = std::string(cli) +
                          " classify --builtin regular:4 --format structured 2>/dev/null";
        std::string a = capture(cmd), b = capture(cmd);
        c.require(!a.empty() && a == b, "subprocess rerun differs");
    }
    c.finish();
}

} // namespace

int main() {
    std::printf("latcoh acceptance suite\n");
    auto corpus = small_corpus();
    criterion_1_and_2(corpus);
    criterion_3();
    criterion_4(corpus);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(corpus);
    criterion_9();

    int failed = 0;
    for (const auto& o : g_outcomes)
        if (!o.pass) ++failed;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_outcomes.size()) - failed,
                g_outcomes.size());
    return failed == 0 ? 0 : 1;
}
