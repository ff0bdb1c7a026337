#pragma once

#include <cstdint>
#include <vector>

namespace greenberg::ff {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 m);

/// Distinct prime divisors of m by trial division, ascending.
std::vector<u64> prime_factors(u64 m);

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Inverse of an odd residue modulo 2^bits (bits <= 64).
u64 inverse_mod_pow2(u64 odd, int bits);

/// A residue in [0, r).
struct FpElement {
    u64 value = 0;
    friend bool operator==(FpElement, FpElement) = default;
};

/// The prime field F_r for an odd prime r < 2^63.
class PrimeField {
public:
    explicit PrimeField(u64 r);

    u64 modulus() const { return r_; }

    FpElement from(u64 x) const { return {x % r_}; }
    FpElement zero() const { return {0}; }
    FpElement one() const { return {1}; }

    FpElement add(FpElement a, FpElement b) const {
        u64 s = a.value + b.value;
        return {s >= r_ ? s - r_ : s};
    }
    FpElement sub(FpElement a, FpElement b) const {
        return {a.value >= b.value ? a.value - b.value : a.value + r_ - b.value};
    }
    FpElement neg(FpElement a) const { return {a.value == 0 ? 0 : r_ - a.value}; }
    FpElement mul(FpElement a, FpElement b) const { return {mul_mod(a.value, b.value, r_)}; }
    FpElement pow(FpElement a, u64 e) const { return {pow_mod(a.value, e, r_)}; }
    FpElement inv(FpElement a) const;

    /// Euler's criterion; requires a != 0.
    bool is_square(FpElement a) const;

    /// Smallest positive quadratic nonresidue.
    u64 smallest_nonresidue() const;

private:
    u64 r_;
};

/// a + b*sqrt(q) in F_{r^2}.
struct Fp2Element {
    FpElement a;
    FpElement b;
    friend bool operator==(Fp2Element, Fp2Element) = default;
};

/// F_{r^2} = F_r[sqrt(q)] with q the smallest positive nonresidue mod r.
class QuadraticExtension {
public:
    explicit QuadraticExtension(u64 r);

    const PrimeField& base() const { return fp_; }
    u64 nonresidue() const { return q_; }

    Fp2Element embed(FpElement x) const { return {x, fp_.zero()}; }
    Fp2Element one() const { return {fp_.one(), fp_.zero()}; }

    Fp2Element add(const Fp2Element& x, const Fp2Element& y) const {
        return {fp_.add(x.a, y.a), fp_.add(x.b, y.b)};
    }
    Fp2Element sub(const Fp2Element& x, const Fp2Element& y) const {
        return {fp_.sub(x.a, y.a), fp_.sub(x.b, y.b)};
    }
    Fp2Element mul(const Fp2Element& x, const Fp2Element& y) const;
    Fp2Element pow(Fp2Element x, u64 e) const;
    Fp2Element inv(const Fp2Element& x) const;
    /// x^r, i.e. conjugation b -> -b.
    Fp2Element frobenius(const Fp2Element& x) const { return {x.a, fp_.neg(x.b)}; }

    bool in_base_field(const Fp2Element& x) const { return x.b.value == 0; }
    bool is_one(const Fp2Element& x) const { return x.a.value == 1 && x.b.value == 0; }

private:
    PrimeField fp_;
    u64 q_;
};

/// A prime r with a fixed system of roots of unity in F_{r^2}: the shared
/// embedding for every discrete logarithm taken at r.
struct FieldContext {
    u64 r = 0;
    int n = 0;
    u64 f = 0;
    int k = 0;                       // log precision, n + 1
    QuadraticExtension field{3};
    Fp2Element zeta;                 // exact order 2^{n+3} f
    Fp2Element zeta4;                // zeta^{2^{n+1} f}
    Fp2Element zeta_2n3;             // zeta^f, order 2^{n+3}
    Fp2Element zeta_f;               // zeta^{2^{n+3}}, order f
    FpElement zeta_2k;               // zeta^{(2^{n+3} f) / 2^k}, order 2^k, lies in F_r

    u64 order() const { return (u64{1} << (n + 3)) * f; }
};

/// Builds the context for prime r at level n. Requires r = 1 mod 2^{n+2} f.
/// The generator sweep a + sqrt(q), a = 0, 1, ... keeps the first candidate
/// of exact order; `alternate` > 0 skips that many distinct earlier roots.
/// Throws std::invalid_argument on a precondition violation.
FieldContext build_field_context(u64 r, int n, u64 f, int alternate = 0);

/// The level-m context at the same prime whose roots are the 2^{n-m}-th
/// powers of the level-n roots, so that logs at the two levels agree modulo
/// 2^{m+1}. Requires 0 <= m <= ctx.n.
FieldContext derive_lower_level(const FieldContext& ctx, int m);

/// e in [0, 2^k) with u^{(r-1)/2^k} = zeta_2k^e (Pohlig-Hellman over the
/// 2-power subgroup). Throws std::invalid_argument for u = 0.
u64 dlog_two_power(FpElement u, const FieldContext& ctx);

}  // namespace greenberg::ff
