// Cross-checks of the log-polynomials against independently evaluated
// cyclotomic products, shared by the unit and acceptance tests.
#pragma once

#include "greenberg/cyclo_logs.hpp"

namespace identity {

using u64 = std::uint64_t;
using namespace greenberg;

// 2 eta_n equals the log-poly of prod_{c = +-1, a in ker chi_f}
// (1 - zeta_{2^{n+2}}^{c 3^i} zeta_f^{2a}), conjugate by conjugate. The f-part
// is squared because zeta_{2^{n+2} f} is the square of zeta_{2^{n+3} f}.
// Requires f = 1 mod 4.
inline bool square_identity(const ff::FieldContext& ctx, const quad::KernelSet& K) {
    const auto& F = ctx.field;
    const auto eta = logs::log_poly_eta(ctx, K);
    const auto z = F.mul(ctx.zeta_2n3, ctx.zeta_2n3);  // order 2^{n+2}
    const auto zf2 = F.mul(ctx.zeta_f, ctx.zeta_f);
    const u64 order = u64{1} << (ctx.n + 2);
    const u64 mask = (u64{1} << ctx.k) - 1;
    u64 e = 1;
    for (std::size_t i = 0; i < eta.coeffs.size(); ++i) {
        ff::Fp2Element prod = F.one();
        for (u64 a : K.residues) {
            const auto za = F.pow(zf2, a);
            const auto zai = F.pow(zf2, ctx.f - a);
            const auto t1 = F.sub(F.one(), F.mul(F.pow(z, e), za));
            const auto t2 = F.sub(F.one(), F.mul(F.pow(z, order - e), zai));
            prod = F.mul(prod, F.mul(t1, t2));
        }
        if (!F.in_base_field(prod)) return false;
        if (((2 * eta.coeffs[i]) & mask) != ff::dlog_two_power(prod.a, ctx)) return false;
        e = e * 3 % order;
    }
    return true;
}

// Coefficient i of the level-m eta is the sum of the level-n coefficients
// i + j 2^m, in the level-m context derived from the same prime.
inline bool norm_collapse(const ff::FieldContext& hi, int m, const quad::KernelSet& K) {
    const auto eta_n = logs::log_poly_eta(hi, K);
    const auto eta_m = logs::log_poly_eta(ff::derive_lower_level(hi, m), K);
    const u64 mask = (u64{1} << (m + 1)) - 1;
    for (std::size_t i = 0; i < eta_m.coeffs.size(); ++i) {
        u64 sum = 0;
        for (std::size_t j = i; j < eta_n.coeffs.size(); j += eta_m.coeffs.size()) sum += eta_n.coeffs[j];
        if (eta_m.coeffs[i] != (sum & mask)) return false;
    }
    return true;
}

}  // namespace identity
