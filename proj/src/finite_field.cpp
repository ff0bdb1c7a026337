#include "greenberg/finite_field.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace greenberg::ff {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 m) {
    if (m < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (m % p == 0) return m == p;
    }
    u64 d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Witness set of Jim Sinclair, valid below 2^64.
    constexpr std::array<u64, 7> witnesses{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (u64 w : witnesses) {
        u64 a = w % m;
        if (a == 0) continue;
        u64 x = pow_mod(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 m) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) out.push_back(m);
    return out;
}

u64 inverse_mod_pow2(u64 odd, int bits) {
    // Newton iteration doubles the number of correct low bits each step.
    u64 x = odd;
    for (int i = 0; i < 6; ++i) x *= 2 - odd * x;
    return bits >= 64 ? x : x & ((u64{1} << bits) - 1);
}

PrimeField::PrimeField(u64 r) : r_(r) {
    if (r < 3 || (r & 1) == 0 || r >= (u64{1} << 63)) {
        throw std::invalid_argument("PrimeField: modulus must be an odd prime below 2^63");
    }
}

FpElement PrimeField::inv(FpElement a) const {
    if (a.value == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return pow(a, r_ - 2);
}

bool PrimeField::is_square(FpElement a) const {
    return pow(a, (r_ - 1) / 2).value == 1;
}

u64 PrimeField::smallest_nonresidue() const {
    for (u64 q = 2; q < r_; ++q) {
        if (!is_square(from(q))) return q;
    }
    throw std::logic_error("PrimeField: no quadratic nonresidue (modulus not prime?)");
}

QuadraticExtension::QuadraticExtension(u64 r) : fp_(r), q_(fp_.smallest_nonresidue()) {}

Fp2Element QuadraticExtension::mul(const Fp2Element& x, const Fp2Element& y) const {
    const u64 r = fp_.modulus();
    u128 ac = static_cast<u128>(x.a.value) * y.a.value;
    u128 bd = static_cast<u128>(x.b.value) * y.b.value % r;
    u128 re = (ac + bd * q_) % r;
    u128 im = (static_cast<u128>(x.a.value) * y.b.value + static_cast<u128>(x.b.value) * y.a.value) % r;
    return {{static_cast<u64>(re)}, {static_cast<u64>(im)}};
}

Fp2Element QuadraticExtension::pow(Fp2Element x, u64 e) const {
    Fp2Element result = one();
    while (e > 0) {
        if (e & 1) result = mul(result, x);
        x = mul(x, x);
        e >>= 1;
    }
    return result;
}

Fp2Element QuadraticExtension::inv(const Fp2Element& x) const {
    // (a + b s)^{-1} = (a - b s) / (a^2 - q b^2)
    FpElement norm = fp_.sub(fp_.mul(x.a, x.a), fp_.mul(fp_.from(q_), fp_.mul(x.b, x.b)));
    FpElement ninv = fp_.inv(norm);
    return {fp_.mul(x.a, ninv), fp_.neg(fp_.mul(x.b, ninv))};
}

namespace {

bool has_exact_order(const QuadraticExtension& F, const Fp2Element& z, u64 order,
                     const std::vector<u64>& primes) {
    if (!F.is_one(F.pow(z, order))) return false;
    for (u64 p : primes) {
        if (F.is_one(F.pow(z, order / p))) return false;
    }
    return true;
}

}  // namespace

FieldContext build_field_context(u64 r, int n, u64 f, int alternate) {
    if (n < 0 || n > 40 || f < 1 || (f & 1) == 0) {
        throw std::invalid_argument("build_field_context: need n >= 0 and odd f");
    }
    const u64 base_modulus = (u64{1} << (n + 2)) * f;
    if (r % base_modulus != 1) {
        throw std::invalid_argument("build_field_context: r = " + std::to_string(r) +
                                    " is not 1 mod 2^" + std::to_string(n + 2) + "*" +
                                    std::to_string(f));
    }
    FieldContext ctx;
    ctx.r = r;
    ctx.n = n;
    ctx.f = f;
    ctx.k = n + 1;
    ctx.field = QuadraticExtension(r);
    const QuadraticExtension& F = ctx.field;
    const PrimeField& fp = F.base();

    const u64 order = ctx.order();
    std::vector<u64> primes = prime_factors(f);
    primes.insert(primes.begin(), 2);

    // (r^2 - 1) / (2^{n+3} f) = ((r - 1) / (2^{n+2} f)) * ((r + 1) / 2)
    const u64 e1 = (r - 1) / base_modulus;
    const u64 e2 = (r + 1) / 2;

    std::vector<Fp2Element> found;
    Fp2Element zeta{};
    bool ok = false;
    for (u64 a = 0; a < r; ++a) {
        Fp2Element y{fp.from(a), fp.one()};
        Fp2Element z = F.pow(F.pow(y, e1), e2);
        if (!has_exact_order(F, z, order, primes)) continue;
        bool seen = false;
        for (const auto& prev : found) seen = seen || prev == z;
        if (seen) continue;
        if (static_cast<int>(found.size()) == alternate) {
            zeta = z;
            ok = true;
            break;
        }
        found.push_back(z);
    }
    if (!ok) throw std::logic_error("build_field_context: generator sweep exhausted");

    ctx.zeta = zeta;
    ctx.zeta4 = F.pow(zeta, (u64{1} << (n + 1)) * f);
    ctx.zeta_2n3 = F.pow(zeta, f);
    ctx.zeta_f = F.pow(zeta, u64{1} << (n + 3));
    Fp2Element z2k = F.pow(zeta, order >> ctx.k);
    if (!F.in_base_field(z2k)) throw std::logic_error("build_field_context: zeta_2k not in F_r");
    ctx.zeta_2k = z2k.a;
    return ctx;
}

FieldContext derive_lower_level(const FieldContext& ctx, int m) {
    if (m < 0 || m > ctx.n) throw std::invalid_argument("derive_lower_level: need 0 <= m <= n");
    FieldContext out = ctx;
    const QuadraticExtension& F = ctx.field;
    out.n = m;
    out.k = m + 1;
    // Each root is the 2^{n-m}-th power of its level-n counterpart, the 2-part
    // and the f-part separately; zeta is then rebuilt from the two by CRT.
    const u64 step = u64{1} << (ctx.n - m);
    out.zeta_2n3 = F.pow(ctx.zeta_2n3, step);
    out.zeta_f = F.pow(ctx.zeta_f, step);
    const u64 u = inverse_mod_pow2(ctx.f, m + 3) & ((u64{1} << (m + 3)) - 1);
    const u64 v = pow_mod((ctx.f + 1) / 2, static_cast<u64>(m + 3), ctx.f);
    out.zeta = F.mul(F.pow(out.zeta_2n3, u), F.pow(out.zeta_f, v));
    out.zeta4 = F.pow(out.zeta, (u64{1} << (m + 1)) * ctx.f);
    Fp2Element z2k = F.pow(out.zeta, out.order() >> out.k);
    if (!F.in_base_field(z2k)) throw std::logic_error("derive_lower_level: zeta_2k not in F_r");
    out.zeta_2k = z2k.a;
    return out;
}

u64 dlog_two_power(FpElement u, const FieldContext& ctx) {
    const PrimeField& fp = ctx.field.base();
    if (u.value % ctx.r == 0) throw std::invalid_argument("dlog_two_power: u = 0");
    const int k = ctx.k;
    FpElement h = fp.pow(u, (ctx.r - 1) >> k);
    // h = zeta_2k^e; recover e one bit at a time from the bottom.
    FpElement zeta_inv = fp.inv(ctx.zeta_2k);
    u64 e = 0;
    FpElement strip = fp.one();  // zeta_2k^{-e} for the bits found so far
    for (int bit = 0; bit < k; ++bit) {
        FpElement t = fp.pow(fp.mul(h, strip), u64{1} << (k - 1 - bit));
        if (t.value != 1) {
            e |= u64{1} << bit;
            strip = fp.mul(strip, fp.pow(zeta_inv, u64{1} << bit));
        }
    }
    if (fp.mul(h, strip).value != 1) {
        throw std::logic_error("dlog_two_power: element outside the 2-power subgroup");
    }
    return e;
}

}  // namespace greenberg::ff
