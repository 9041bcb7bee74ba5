#include "latcoh/lattice.hpp"

#include "latcoh/errors.hpp"

#include <numeric>
#include <random>

namespace latcoh {

namespace {

// d-cycle permutation matrix: e_i -> e_{i+1 mod d}.
IntMatrix cycle_matrix(long d) {
    IntMatrix p(d, d);
    for (long i = 0; i < d; ++i) p((i + 1) % d, i) = 1;
    return p;
}

// Companion matrix of a monic polynomial.
IntMatrix companion(const PolyZ& monic) {
    const long deg = poly_deg(monic);
    if (deg < 0 || monic.back() != 1) throw NotMonic("companion: polynomial must be monic");
    IntMatrix c(deg, deg);
    for (long i = 0; i + 1 < deg; ++i) c(i + 1, i) = 1;
    for (long i = 0; i < deg; ++i) c(i, deg - 1) = -monic[static_cast<size_t>(i)];
    return c;
}

} // namespace

void GroupLattice::validate() const {
    if (group.order < 1) throw InvariantViolation("lattice: group order must be positive");
    if (sigma.rows() != z_rank || sigma.cols() != z_rank)
        throw InvariantViolation("lattice: sigma shape does not match the rank");
    if (!mat_pow(sigma, group.order).is_identity())
        throw InvariantViolation("lattice: sigma^n != identity");
    if (base.is_cyclotomic()) {
        if (!zeta) throw InvariantViolation("lattice: cyclotomic base requires a zeta action");
        if (zeta->rows() != z_rank || zeta->cols() != z_rank)
            throw InvariantViolation("lattice: zeta shape does not match the rank");
        const long phi = base.z_rank();
        if (phi > 0 && z_rank % phi != 0)
            throw InvariantViolation("lattice: rank is not a multiple of phi(m)");
        if (!poly_eval_matrix(cyclotomic(base.m).coeffs, *zeta).is_zero())
            throw InvariantViolation("lattice: Phi_m(zeta) != 0");
        if (mul(sigma, *zeta) != mul(*zeta, sigma))
            throw InvariantViolation("lattice: sigma and zeta do not commute");
    } else if (zeta) {
        throw InvariantViolation("lattice: zeta action present without a cyclotomic base");
    }
}

void LatticeMap::validate() const {
    if (source.base != target.base || source.group != target.group)
        throw MismatchedBase("lattice map: source and target disagree on base or group");
    if (matrix.rows() != target.z_rank || matrix.cols() != source.z_rank)
        throw InvariantViolation("lattice map: matrix shape mismatch");
    if (mul(matrix, source.sigma) != mul(target.sigma, matrix))
        throw InvariantViolation("lattice map: matrix does not intertwine sigma");
    if (source.base.is_cyclotomic() &&
        mul(matrix, *source.zeta) != mul(*target.zeta, matrix))
        throw InvariantViolation("lattice map: matrix does not intertwine zeta");
}

GroupLattice permutation_lattice(const BaseRing& base, const CyclicGroup& g,
                                 const std::vector<long>& orbit_sizes) {
    for (long d : orbit_sizes)
        if (d < 1 || g.order % d != 0)
            throw BadDivisor("permutation lattice: orbit size must divide the group order");

    const long phi = base.is_cyclotomic() ? base.z_rank() : 1;
    IntMatrix sigma(0, 0), zeta(0, 0);
    const IntMatrix ring_zeta = base.is_cyclotomic() ? base.zeta_matrix() : IntMatrix();
    for (long d : orbit_sizes) {
        IntMatrix sblock = cycle_matrix(d);
        if (base.is_cyclotomic()) {
            sigma = block_diag(sigma, kron(sblock, IntMatrix::identity(phi)));
            zeta = block_diag(zeta, kron(IntMatrix::identity(d), ring_zeta));
        } else {
            sigma = block_diag(sigma, sblock);
        }
    }
    GroupLattice m;
    m.base = base;
    m.group = g;
    m.z_rank = sigma.rows();
    m.sigma = std::move(sigma);
    if (base.is_cyclotomic()) m.zeta = std::move(zeta);
    m.perm_orbits = orbit_sizes;
    m.validate();
    return m;
}

GroupLattice trivial_lattice(const BaseRing& base, const CyclicGroup& g) {
    return permutation_lattice(base, g, {1});
}

GroupLattice regular_lattice(const BaseRing& base, const CyclicGroup& g) {
    return permutation_lattice(base, g, {g.order});
}

GroupLattice augmentation_ideal(const BaseRing& base, const CyclicGroup& g) {
    const long n = g.order;
    // Basis (sigma - 1, sigma^2 - 1, ..., sigma^(n-1) - 1):
    //   sigma . (sigma^j - 1) = (sigma^(j+1) - 1) - (sigma - 1)   for j < n-1
    //   sigma . (sigma^(n-1) - 1) = -(sigma - 1)
    IntMatrix a(n - 1, n - 1);
    for (long j = 0; j + 1 < n; ++j) {
        a(0, j) -= 1;
        if (j + 2 <= n - 1) a(j + 1, j) = 1;
    }
    GroupLattice m;
    m.base = base;
    m.group = g;
    if (base.is_cyclotomic()) {
        const long phi = base.z_rank();
        m.sigma = kron(a, IntMatrix::identity(phi));
        m.zeta = kron(IntMatrix::identity(n - 1), base.zeta_matrix());
    } else {
        m.sigma = std::move(a);
    }
    m.z_rank = m.sigma.rows();
    m.validate();
    return m;
}

GroupLattice dual(const GroupLattice& m) {
    GroupLattice d = m;
    d.sigma = mat_pow(m.sigma, m.group.order - 1).transpose();
    if (m.zeta) d.zeta = mat_pow(*m.zeta, m.base.m - 1).transpose();
    // Duals of permutation lattices are permutation lattices; the record
    // survives even though the zeta matrix is conjugated.
    d.validate();
    return d;
}

GroupLattice direct_sum(const GroupLattice& a, const GroupLattice& b) {
    if (a.base != b.base || a.group != b.group)
        throw MismatchedBase("direct sum: base ring or group mismatch");
    GroupLattice s;
    s.base = a.base;
    s.group = a.group;
    s.z_rank = a.z_rank + b.z_rank;
    s.sigma = block_diag(a.sigma, b.sigma);
    if (a.base.is_cyclotomic()) s.zeta = block_diag(*a.zeta, *b.zeta);
    if (a.perm_orbits && b.perm_orbits) {
        std::vector<long> orbits = *a.perm_orbits;
        orbits.insert(orbits.end(), b.perm_orbits->begin(), b.perm_orbits->end());
        s.perm_orbits = std::move(orbits);
    }
    s.validate();
    return s;
}

GroupLattice restrict_to(const GroupLattice& m, const Subgroup& h) {
    if (h.parent_order != m.group.order)
        throw BadDivisor("restrict: subgroup of a different group");
    GroupLattice r = m;
    r.group = CyclicGroup{h.order};
    r.sigma = mat_pow(m.sigma, h.generator_exponent());
    if (m.perm_orbits) {
        std::vector<long> orbits;
        for (long s : *m.perm_orbits) {
            const long parts = std::gcd(s, h.generator_exponent());
            for (long i = 0; i < parts; ++i) orbits.push_back(s / parts);
        }
        r.perm_orbits = std::move(orbits);
    }
    r.validate();
    return r;
}

IntMatrix fixed_sublattice(const GroupLattice& m, const Subgroup& h) {
    if (h.parent_order != m.group.order)
        throw BadDivisor("fixed sublattice: subgroup of a different group");
    IntMatrix t = mat_pow(m.sigma, h.generator_exponent());
    return kernel_basis(t - IntMatrix::identity(m.z_rank));
}

namespace {

struct SplitBasis {
    // Unimodular u with u * (old basis change p = u^{-1}) such that the
    // first `head` columns of p span the distinguished sublattice.
    IntMatrix u, p;
    long head = 0;
};

// Quotient data for m modulo the saturated sublattice spanned by the first
// `head` columns of p.
GroupLattice induced_quotient(const GroupLattice& m, const SplitBasis& sb) {
    const long z = m.z_rank;
    std::vector<long> tail;
    for (long i = sb.head; i < z; ++i) tail.push_back(i);
    std::vector<long> headv;
    for (long i = 0; i < sb.head; ++i) headv.push_back(i);

    IntMatrix s_conj = mul(sb.u, mul(m.sigma, sb.p));
    if (!submatrix(s_conj, tail, headv).is_zero())
        throw InternalError("quotient: sublattice is not sigma-invariant");
    GroupLattice q;
    q.base = m.base;
    q.group = m.group;
    q.z_rank = z - sb.head;
    q.sigma = submatrix(s_conj, tail, tail);
    if (m.zeta) {
        IntMatrix z_conj = mul(sb.u, mul(*m.zeta, sb.p));
        if (!submatrix(z_conj, tail, headv).is_zero())
            throw InternalError("quotient: sublattice is not zeta-invariant");
        q.zeta = submatrix(z_conj, tail, tail);
    }
    q.validate();
    return q;
}

} // namespace

PhiQuotient phi_quotient(const GroupLattice& m, long d) {
    if (d < 1 || m.group.order % d != 0)
        throw BadDivisor("phi_quotient: d must divide the group order");
    const IntMatrix b = poly_eval_matrix(cyclotomic(d).coeffs, m.sigma);
    SmithDecomposition s = smith(b);

    AbelianInvariants torsion;
    for (long i = 0; i < m.z_rank; ++i)
        if (s.d(i, i) > 1) torsion.torsion.push_back(s.d(i, i));

    // Reorder so the nonzero diagonal positions (the saturation of im b)
    // come first.
    std::vector<long> order;
    for (long i = 0; i < m.z_rank; ++i)
        if (s.d(i, i) != 0) order.push_back(i);
    const long head = static_cast<long>(order.size());
    for (long i = 0; i < m.z_rank; ++i)
        if (s.d(i, i) == 0) order.push_back(i);

    IntMatrix p_full = inverse_unimodular(s.u);
    std::vector<long> all(static_cast<size_t>(m.z_rank));
    std::iota(all.begin(), all.end(), 0);
    SplitBasis sb;
    sb.p = submatrix(p_full, all, order);
    sb.u = submatrix(s.u, order, all); // row permutation of u inverts sb.p
    sb.head = head;

    PhiQuotient out{induced_quotient(m, sb), std::move(torsion)};
    if (!poly_eval_matrix(cyclotomic(d).coeffs, out.torsion_free.sigma).is_zero())
        throw InternalError("phi_quotient: Phi_d does not vanish on the quotient");
    return out;
}

GroupLattice kernel_sublattice(const GroupLattice& m, long d) {
    return kernel_inclusion(m, d).source;
}

LatticeMap kernel_inclusion(const GroupLattice& m, long d) {
    if (d < 1 || m.group.order % d != 0)
        throw BadDivisor("kernel_sublattice: d must divide the group order");
    const IntMatrix b = poly_eval_matrix(cyclotomic(d).coeffs, m.sigma);
    IntMatrix k = kernel_basis(b);

    GroupLattice sub;
    sub.base = m.base;
    sub.group = m.group;
    sub.z_rank = k.cols();
    auto s_act = solve_matrix(k, mul(m.sigma, k));
    if (!s_act) throw InternalError("kernel_sublattice: kernel not sigma-invariant");
    sub.sigma = std::move(*s_act);
    if (m.zeta) {
        auto z_act = solve_matrix(k, mul(*m.zeta, k));
        if (!z_act) throw InternalError("kernel_sublattice: kernel not zeta-invariant");
        sub.zeta = std::move(*z_act);
    }
    sub.validate();
    LatticeMap inc{std::move(sub), m, std::move(k)};
    inc.validate();
    return inc;
}

LatticeMap cokernel_projection(const GroupLattice& m, long d) {
    const IntMatrix k = kernel_inclusion(m, d).matrix;
    SmithDecomposition s = smith(k);
    for (long i = 0; i < k.cols(); ++i)
        if (s.d(i, i) != 1)
            throw InternalError("phi_cokernel: kernel basis is not primitive");

    SplitBasis sb;
    sb.u = s.u;
    sb.p = inverse_unimodular(s.u);
    sb.head = k.cols();
    GroupLattice q = induced_quotient(m, sb);

    std::vector<long> tail, all(static_cast<size_t>(m.z_rank));
    std::iota(all.begin(), all.end(), 0);
    for (long i = sb.head; i < m.z_rank; ++i) tail.push_back(i);
    LatticeMap proj{m, std::move(q), submatrix(sb.u, tail, all)};
    proj.validate();
    return proj;
}

GroupLattice phi_cokernel(const GroupLattice& m, long d) {
    return cokernel_projection(m, d).target;
}

GroupLattice conjugate(const GroupLattice& m, const IntMatrix& e) {
    IntMatrix einv = inverse_unimodular(e);
    GroupLattice c = m;
    c.perm_orbits.reset();
    c.sigma = mul(e, mul(m.sigma, einv));
    if (m.zeta) c.zeta = mul(e, mul(*m.zeta, einv));
    c.validate();
    return c;
}

GroupLattice random_lattice(const CyclicGroup& g, long z_rank, unsigned long seed) {
    if (z_rank < 0) throw RankInfeasible("random_lattice: negative rank");
    std::mt19937_64 eng(seed);

    // Block pool: permutation blocks of every divisor size, and
    // companion(Phi_d) blocks of size phi(d).
    struct Block {
        bool perm;
        long d;
        long size;
    };
    std::vector<Block> pool;
    for (long d : divisors(g.order)) pool.push_back({true, d, d});
    for (long d : divisors(g.order)) pool.push_back({false, d, euler_phi(d)});

    GroupLattice m;
    m.base = BaseRing::integers();
    m.group = g;
    m.sigma = IntMatrix(0, 0);
    long remaining = z_rank;
    while (remaining > 0) {
        std::vector<Block> feasible;
        for (const auto& b : pool)
            if (b.size <= remaining) feasible.push_back(b);
        if (feasible.empty()) throw RankInfeasible("random_lattice: no block fits");
        const Block& b = feasible[eng() % feasible.size()];
        IntMatrix blk = b.perm ? cycle_matrix(b.d) : companion(cyclotomic(b.d).coeffs);
        m.sigma = block_diag(m.sigma, blk);
        remaining -= b.size;
    }
    m.z_rank = z_rank;

    // Small unimodular conjugator: entries stay within [-2, 2], at most
    // z_rank^2 elementary operations.
    IntMatrix e = IntMatrix::identity(z_rank);
    if (z_rank > 1) {
        for (long step = 0; step < z_rank * z_rank; ++step) {
            const long kind = static_cast<long>(eng() % 3);
            const long i = static_cast<long>(eng() % z_rank);
            long j = static_cast<long>(eng() % (z_rank - 1));
            if (j >= i) ++j;
            if (kind == 0) {
                e.swap_rows(i, j);
            } else if (kind == 1) {
                for (long k = 0; k < z_rank; ++k) e(i, k) = -e(i, k);
            } else {
                const long sgn = (eng() & 1) ? 1 : -1;
                bool ok = true;
                for (long k = 0; k < z_rank && ok; ++k)
                    if (abs(mpz_class(e(j, k) + sgn * e(i, k))) > 2) ok = false;
                if (!ok) continue;
                for (long k = 0; k < z_rank; ++k) e(j, k) += sgn * e(i, k);
            }
        }
    }
    GroupLattice out = conjugate(m, e);
    out.validate();
    return out;
}

} // namespace latcoh
