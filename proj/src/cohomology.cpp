#include "latcoh/cohomology.hpp"

#include "latcoh/errors.hpp"
#include "latcoh/parallel.hpp"

#include <numeric>

namespace latcoh {

long TateModule::zeta_length() const {
    if (!zeta_blocks) return 0;
    long s = 0;
    for (long b : *zeta_blocks) s += b;
    return s;
}

namespace {

IntMatrix subgroup_generator_action(const GroupLattice& m, const Subgroup& h) {
    if (h.parent_order != m.group.order)
        throw BadDivisor("cohomology: subgroup of a different group");
    return mat_pow(m.sigma, h.generator_exponent());
}

AbelianInvariants localized(AbelianInvariants inv, const BaseRing& base) {
    if (base.is_localized()) return p_primary_part(inv, base.p);
    return inv;
}

// The prime of the (1 - zeta)-filtration; requires a prime-power index.
mpz_class filtration_prime(const BaseRing& base) {
    if (!base.is_cyclotomic())
        throw InvariantViolation("zeta blocks require a cyclotomic base ring");
    auto ps = prime_factors(base.m);
    if (ps.size() != 1)
        throw InvariantViolation("zeta blocks require a prime-power cyclotomic index");
    return ps[0];
}

// Quotient (sublattice spanned by basis) / (image of full_map), with the
// optional zeta-string structure of the residual (1 - zeta)-action.
TateModule quotient_module(const GroupLattice& m, const IntMatrix& basis,
                           const IntMatrix& full_map, bool with_zeta_blocks) {
    auto coords = solve_matrix(basis, full_map);
    if (!coords) throw InternalError("cohomology: image escapes the saturated sublattice");
    TateModule out;
    out.invariants = localized(cokernel_invariants(*coords), m.base);
    if (out.invariants.free_rank != 0)
        throw InternalError("cohomology: Tate group has free rank");
    if (with_zeta_blocks) {
        const mpz_class p = filtration_prime(m.base);
        IntMatrix theta_amb = IntMatrix::identity(m.z_rank) - *m.zeta;
        auto theta = solve_matrix(basis, mul(theta_amb, basis));
        if (!theta) throw InternalError("cohomology: (1 - zeta) escapes the sublattice");
        out.zeta_blocks = nilpotent_block_sizes(
            ModulePresentation::of_quotient(basis.cols(), *coords), *theta, p);
    }
    return out;
}

TateModule norm_kernel_mod_shifts(const GroupLattice& m, const Subgroup& h,
                                  bool with_zeta_blocks) {
    const IntMatrix t = subgroup_generator_action(m, h);
    const IntMatrix n = norm_matrix(m, h);
    const IntMatrix k = kernel_basis(n);
    return quotient_module(m, k, t - IntMatrix::identity(m.z_rank), with_zeta_blocks);
}

} // namespace

IntMatrix norm_matrix(const GroupLattice& m, const Subgroup& h) {
    const IntMatrix t = subgroup_generator_action(m, h);
    IntMatrix acc = IntMatrix::identity(m.z_rank);
    IntMatrix power = IntMatrix::identity(m.z_rank);
    for (long i = 1; i < h.order; ++i) {
        power = mul(power, t);
        acc = acc + power;
    }
    return acc;
}

TateModule tate_minus_one(const GroupLattice& m, const Subgroup& h, bool with_zeta_blocks) {
    return norm_kernel_mod_shifts(m, h, with_zeta_blocks);
}

TateModule tate_zero(const GroupLattice& m, const Subgroup& h, bool with_zeta_blocks) {
    const IntMatrix t = subgroup_generator_action(m, h);
    const IntMatrix fixed = kernel_basis(t - IntMatrix::identity(m.z_rank));
    return quotient_module(m, fixed, norm_matrix(m, h), with_zeta_blocks);
}

TateModule h_one_cocycle(const GroupLattice& m, const Subgroup& h) {
    return norm_kernel_mod_shifts(m, h, false);
}

TateModule h_one_resolution(const GroupLattice& m, const Subgroup& h) {
    // Hom(-, M) applied to the 2-periodic resolution of Z over Z[C_d] gives
    //   M --(T-1)--> M --N--> M ; H^1 is the homology at the middle term,
    // read off through the Smith form of N.
    const IntMatrix t = subgroup_generator_action(m, h);
    const IntMatrix n = norm_matrix(m, h);
    const IntMatrix b = t - IntMatrix::identity(m.z_rank);

    SmithDecomposition s = smith(n);
    IntMatrix y = mul(inverse_unimodular(s.v), b);
    std::vector<long> zero_pos, all(static_cast<size_t>(m.z_rank));
    std::iota(all.begin(), all.end(), 0);
    for (long i = 0; i < m.z_rank; ++i) {
        if (s.d(i, i) == 0) {
            zero_pos.push_back(i);
            continue;
        }
        for (long j = 0; j < m.z_rank; ++j)
            if (y(i, j) != 0)
                throw InternalError("h_one: boundary image misses the cocycle lattice");
    }
    TateModule out;
    out.invariants = localized(cokernel_invariants(submatrix(y, zero_pos, all)), m.base);
    if (out.invariants.free_rank != 0) throw InternalError("h_one: infinite cohomology group");
    return out;
}

TateModule h_one(const GroupLattice& m, const Subgroup& h, bool with_zeta_blocks) {
    TateModule cocycle = norm_kernel_mod_shifts(m, h, with_zeta_blocks);
    TateModule resolution = h_one_resolution(m, h);
    if (!(cocycle == resolution))
        throw InternalError("h_one: cocycle and resolution computations disagree");
    return cocycle;
}

const TateTriple& TateProfile::at_order(long d) const {
    for (const auto& [h, t] : by_subgroup)
        if (h.order == d) return t;
    throw BadDivisor("tate profile: no subgroup of that order");
}

namespace {

TateProfile profile_impl(const GroupLattice& m, bool parallel) {
    const std::vector<Subgroup> hs = subgroups(m.group);
    std::vector<TateTriple> triples(hs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(hs.size()); ++i) {
            const Subgroup& h = hs[static_cast<size_t>(i)];
            triples[static_cast<size_t>(i)] =
                TateTriple{tate_minus_one(m, h), tate_zero(m, h), h_one(m, h)};
        }
    } else {
        for (size_t i = 0; i < hs.size(); ++i) {
            const Subgroup& h = hs[i];
            triples[i] = TateTriple{tate_minus_one(m, h), tate_zero(m, h), h_one(m, h)};
        }
    }
    TateProfile p;
    for (size_t i = 0; i < hs.size(); ++i) p.by_subgroup.emplace_back(hs[i], std::move(triples[i]));
    return p;
}

} // namespace

TateProfile tate_profile(const GroupLattice& m) {
    return profile_impl(m, par::enabled() && m.group.order > 1);
}

TateProfile tate_profile_serial(const GroupLattice& m) { return profile_impl(m, false); }

} // namespace latcoh
