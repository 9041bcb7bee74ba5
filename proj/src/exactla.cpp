#include "latcoh/exactla.hpp"

#include "latcoh/errors.hpp"
#include "latcoh/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace latcoh {

long SmithDecomposition::rank() const {
    long r = 0;
    const long k = std::min(d.rows(), d.cols());
    for (long i = 0; i < k; ++i)
        if (d(i, i) != 0) ++r;
    return r;
}

std::vector<mpz_class> SmithDecomposition::diagonal() const {
    std::vector<mpz_class> out;
    const long k = std::min(d.rows(), d.cols());
    for (long i = 0; i < k; ++i) out.push_back(d(i, i));
    return out;
}

mpz_class AbelianInvariants::torsion_order() const {
    mpz_class o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

std::string AbelianInvariants::to_string() const {
    std::ostringstream os;
    if (is_trivial()) return "0";
    bool first = true;
    for (const auto& t : torsion) {
        if (!first) os << " x ";
        os << "Z/" << t.get_str();
        first = false;
    }
    for (long i = 0; i < free_rank; ++i) {
        if (!first) os << " x ";
        os << "Z";
        first = false;
    }
    return os.str();
}

ModulePresentation ModulePresentation::of_quotient(long ambient_rank, IntMatrix relations) {
    if (relations.rows() != ambient_rank)
        throw InvariantViolation("presentation: relation rows must match ambient rank");
    return ModulePresentation{ambient_rank, std::move(relations)};
}

namespace {

// Quotient with |remainder| <= b/2, b > 0; ties keep the positive remainder.
mpz_class div_round(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > b) ++q;
    return q;
}

void negate_row(IntMatrix& m, long i) {
    for (long j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

struct Pivot {
    long i = -1, j = -1;
};

Pivot find_pivot(const IntMatrix& d, long t) {
    Pivot best;
    mpz_class best_abs;
    for (long i = t; i < d.rows(); ++i)
        for (long j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            mpz_class a = abs(d(i, j));
            if (best.i < 0 || a < best_abs) {
                best = {i, j};
                best_abs = a;
            }
        }
    return best;
}

} // namespace

SmithDecomposition smith(const IntMatrix& a) {
    const long R = a.rows(), C = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(R);
    IntMatrix v = IntMatrix::identity(C);

    const long steps = std::min(R, C);
    for (long t = 0; t < steps; ++t) {
        Pivot p = find_pivot(d, t);
        if (p.i < 0) break; // remaining submatrix is zero
        d.swap_rows(t, p.i);
        u.swap_rows(t, p.i);
        d.swap_cols(t, p.j);
        v.swap_cols(t, p.j);

        for (;;) {
            if (d(t, t) < 0) {
                negate_row(d, t);
                negate_row(u, t);
            }
            const mpz_class piv = d(t, t);

            // Clear the column below the pivot.  One sweep: every row update
            // only reads row t, so rows are independent.
            bool col_dirty = false;
#pragma omp parallel for schedule(static) if (par::enabled() && R - t >= par::kSweepThreshold)
            for (long i = t + 1; i < R; ++i) {
                if (d(i, t) == 0) continue;
                mpz_class q = div_round(d(i, t), piv);
                if (q != 0) {
                    for (long k = t; k < C; ++k) d(i, k) -= q * d(t, k);
                    for (long k = 0; k < R; ++k) u(i, k) -= q * u(t, k);
                }
            }
            long best_i = -1;
            mpz_class best_abs;
            for (long i = t + 1; i < R; ++i) {
                if (d(i, t) == 0) continue;
                col_dirty = true;
                mpz_class ab = abs(d(i, t));
                if (best_i < 0 || ab < best_abs) {
                    best_i = i;
                    best_abs = ab;
                }
            }
            if (col_dirty) {
                d.swap_rows(t, best_i);
                u.swap_rows(t, best_i);
                continue; // remainder became the (strictly smaller) pivot
            }

            // Clear the row to the right of the pivot.
            bool row_dirty = false;
#pragma omp parallel for schedule(static) if (par::enabled() && C - t >= par::kSweepThreshold)
            for (long j = t + 1; j < C; ++j) {
                if (d(t, j) == 0) continue;
                mpz_class q = div_round(d(t, j), piv);
                if (q != 0) {
                    for (long k = t; k < R; ++k) d(k, j) -= q * d(k, t);
                    for (long k = 0; k < C; ++k) v(k, j) -= q * v(k, t);
                }
            }
            long best_j = -1;
            for (long j = t + 1; j < C; ++j) {
                if (d(t, j) == 0) continue;
                row_dirty = true;
                mpz_class ab = abs(d(t, j));
                if (best_j < 0 || ab < best_abs) {
                    best_j = j;
                    best_abs = ab;
                }
            }
            if (row_dirty) {
                d.swap_cols(t, best_j);
                v.swap_cols(t, best_j);
                continue;
            }

            // Pivot must divide every remaining entry for the chain d_i | d_{i+1}.
            long bad_i = -1;
            for (long i = t + 1; i < R && bad_i < 0; ++i)
                for (long j = t + 1; j < C; ++j)
                    if (d(i, j) % piv != 0) {
                        bad_i = i;
                        break;
                    }
            if (bad_i >= 0) {
                for (long k = 0; k < C; ++k) d(t, k) += d(bad_i, k);
                for (long k = 0; k < R; ++k) u(t, k) += u(bad_i, k);
                continue;
            }
            break;
        }
    }
    return SmithDecomposition{std::move(u), std::move(d), std::move(v)};
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    if (!a.is_square()) throw InvariantViolation("inverse: matrix not square");
    SmithDecomposition s = smith(a);
    if (!s.d.is_identity()) throw InvariantViolation("inverse: matrix not unimodular");
    // U A V = I  =>  A^{-1} = V U.
    return mul(s.v, s.u);
}

long rank(const IntMatrix& a) { return smith(a).rank(); }

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith(a);
    std::vector<long> free_pos;
    const long k = std::min(a.rows(), a.cols());
    for (long j = 0; j < a.cols(); ++j)
        if (j >= k || s.d(j, j) == 0) free_pos.push_back(j);

    IntMatrix basis(a.cols(), static_cast<long>(free_pos.size()));
    for (size_t c = 0; c < free_pos.size(); ++c) {
        long src = free_pos[c];
        long lead = -1;
        for (long i = 0; i < a.cols(); ++i)
            if (s.v(i, src) != 0) {
                lead = i;
                break;
            }
        const bool flip = lead >= 0 && s.v(lead, src) < 0;
        for (long i = 0; i < a.cols(); ++i)
            basis(i, static_cast<long>(c)) = flip ? mpz_class(-s.v(i, src)) : s.v(i, src);
    }
    return basis;
}

namespace {

std::optional<IntMatrix> solve_with(const SmithDecomposition& s, long arows, long acols,
                                    const IntMatrix& b) {
    IntMatrix ub = mul(s.u, b);
    const long k = std::min(arows, acols);
    IntMatrix y(acols, b.cols());
    for (long c = 0; c < b.cols(); ++c) {
        for (long i = 0; i < arows; ++i) {
            if (i < k && s.d(i, i) != 0) {
                mpz_class q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub(i, c).get_mpz_t(),
                            s.d(i, i).get_mpz_t());
                if (r != 0) return std::nullopt;
                y(i, c) = q;
            } else if (ub(i, c) != 0) {
                return std::nullopt;
            }
        }
    }
    return mul(s.v, y);
}

} // namespace

std::optional<IntMatrix> solve_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw InvariantViolation("solve: row mismatch");
    return solve_with(smith(a), a.rows(), a.cols(), b);
}

std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& a,
                                                    const std::vector<mpz_class>& b) {
    if (static_cast<long>(b.size()) != a.rows()) throw InvariantViolation("solve: row mismatch");
    IntMatrix bm(a.rows(), 1);
    for (long i = 0; i < a.rows(); ++i) bm(i, 0) = b[static_cast<size_t>(i)];
    auto x = solve_matrix(a, bm);
    if (!x) return std::nullopt;
    std::vector<mpz_class> out(static_cast<size_t>(a.cols()));
    for (long i = 0; i < a.cols(); ++i) out[static_cast<size_t>(i)] = (*x)(i, 0);
    return out;
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = smith(a);
    AbelianInvariants inv;
    long nonzero = 0;
    const long k = std::min(a.rows(), a.cols());
    for (long i = 0; i < k; ++i) {
        if (s.d(i, i) == 0) continue;
        ++nonzero;
        if (s.d(i, i) > 1) inv.torsion.push_back(s.d(i, i));
    }
    inv.free_rank = a.rows() - nonzero;
    return inv;
}

AbelianInvariants quotient_invariants(const IntMatrix& ambient_basis,
                                      const IntMatrix& sub_generators) {
    if (ambient_basis.rows() != sub_generators.rows())
        throw InvariantViolation("quotient: ambient/sub live in different spaces");
    SmithDecomposition s = smith(ambient_basis);
    if (s.rank() != ambient_basis.cols())
        throw InvariantViolation("quotient: ambient basis is not independent");
    auto coords = solve_with(s, ambient_basis.rows(), ambient_basis.cols(), sub_generators);
    if (!coords) throw CoordinateError("quotient: sub-generator outside the ambient lattice");
    return cokernel_invariants(*coords);
}

AbelianInvariants merge_invariants(const AbelianInvariants& a, const AbelianInvariants& b) {
    const long n = static_cast<long>(a.torsion.size() + b.torsion.size());
    IntMatrix diag(n, n);
    long i = 0;
    for (const auto& t : a.torsion) diag(i, i) = t, ++i;
    for (const auto& t : b.torsion) diag(i, i) = t, ++i;
    AbelianInvariants out = cokernel_invariants(diag);
    out.free_rank = a.free_rank + b.free_rank;
    return out;
}

AbelianInvariants p_primary_part(const AbelianInvariants& inv, const mpz_class& p) {
    AbelianInvariants out;
    out.free_rank = inv.free_rank;
    for (const auto& t : inv.torsion) {
        mpz_class g = 1, rest = t;
        while (rest % p == 0) {
            g *= p;
            rest /= p;
        }
        if (g > 1) out.torsion.push_back(g);
    }
    return out;
}

namespace {

// log_p of a p-power, or -1 when the argument has another prime factor.
long plog(mpz_class n, const mpz_class& p) {
    long e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return n == 1 ? e : -1;
}

} // namespace

std::vector<long> nilpotent_block_sizes(const ModulePresentation& m, const IntMatrix& nil_op,
                                        const mpz_class& p) {
    if (!nil_op.is_square() || nil_op.rows() != m.ambient_rank)
        throw InvariantViolation("block sizes: operator shape mismatch");
    if (m.relations.cols() > 0 && !solve_matrix(m.relations, mul(nil_op, m.relations)))
        throw InvariantViolation("block sizes: operator does not preserve the relations");

    AbelianInvariants total = cokernel_invariants(m.relations);
    if (total.free_rank > 0) throw NotTorsion("block sizes: module has free rank");
    const long e_total = plog(total.torsion_order(), p);
    if (e_total < 0) throw NotTorsion("block sizes: module is not p-torsion");
    if (e_total == 0) return {};

    // e_j = length of M / T^j M; the number of blocks of size >= j is
    // e_j - e_{j-1}.
    std::vector<long> e{0};
    IntMatrix power = IntMatrix::identity(m.ambient_rank);
    while (e.back() < e_total) {
        power = mul(power, nil_op);
        AbelianInvariants q = cokernel_invariants(hstack(power, m.relations));
        if (q.free_rank > 0) throw InternalError("block sizes: quotient unexpectedly infinite");
        long ej = plog(q.torsion_order(), p);
        if (ej < 0) throw InternalError("block sizes: quotient not p-torsion");
        if (ej == e.back())
            throw NotNilpotent("block sizes: operator image stabilized above zero");
        e.push_back(ej);
    }

    const long max_size = static_cast<long>(e.size()) - 1;
    std::vector<long> blocks;
    for (long j = 1; j <= max_size; ++j) {
        long geq_j = e[static_cast<size_t>(j)] - e[static_cast<size_t>(j - 1)];
        long geq_next = j < max_size ? e[static_cast<size_t>(j + 1)] - e[static_cast<size_t>(j)] : 0;
        for (long c = 0; c < geq_j - geq_next; ++c) blocks.push_back(j);
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

bool spans_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) return false;
    return solve_matrix(a, b).has_value() && solve_matrix(b, a).has_value();
}

} // namespace latcoh
