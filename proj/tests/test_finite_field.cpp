#include <doctest.h>

#include <random>
#include <stdexcept>

#include "greenberg/finite_field.hpp"
#include "oracles.hpp"

using namespace greenberg::ff;

namespace {

// a generator of F_r^x, by factoring r - 1
u64 primitive_root(u64 r) {
    const auto ps = prime_factors(r - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 p : ps) ok = ok && pow_mod(g, (r - 1) / p, r) != 1;
        if (ok) return g;
    }
}

}  // namespace

TEST_CASE("is_prime on listed values") {
    CHECK(is_prime(22777));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(7593));
    CHECK(7593 == 3 * 2531);
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
}

TEST_CASE("is_prime agrees with trial division") {
    for (u64 m = 0; m < 50000; ++m) CHECK_MESSAGE(is_prime(m) == oracle::trial_prime(m), m);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const u64 m = rng() % 4'000'000'000ull;
        CHECK_MESSAGE(is_prime(m) == oracle::trial_prime(m), m);
    }
}

TEST_CASE("is_prime on large inputs and strong pseudoprimes") {
    CHECK(is_prime((u64{1} << 61) - 1));
    CHECK(is_prime(18446744073709551557ull));      // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ull));           // spsp to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ull));  // spsp to the first nine prime bases
    CHECK_FALSE(is_prime(4294967291ull * 4294967279ull));
}

TEST_CASE("F_r^2 satisfies the field axioms on random samples") {
    std::mt19937_64 rng(11);
    for (u64 r : {22777ull, 45553ull, 1000000007ull, 4611686018427387847ull}) {
        if (!is_prime(r)) continue;
        QuadraticExtension F(r);
        const auto& fp = F.base();
        CHECK_FALSE(fp.is_square(fp.from(F.nonresidue())));
        for (u64 q = 2; q < F.nonresidue(); ++q) CHECK(fp.is_square(fp.from(q)));
        auto rnd = [&] { return Fp2Element{fp.from(rng()), fp.from(rng())}; };
        for (int i = 0; i < 200; ++i) {
            const auto x = rnd(), y = rnd(), z = rnd();
            CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
            CHECK(F.mul(x, y) == F.mul(y, x));
            CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
            CHECK(F.sub(F.add(x, y), y) == x);
            if (x.a.value || x.b.value) {
                CHECK(F.is_one(F.mul(x, F.inv(x))));
                // Frobenius is x -> x^r and fixes exactly F_r
                CHECK(F.pow(x, r) == F.frobenius(x));
                CHECK((F.frobenius(x) == x) == F.in_base_field(x));
            }
        }
        const Fp2Element w{fp.from(3), fp.from(5)};
        CHECK(F.is_one(F.pow(w, 0)));
        if (r < (u64{1} << 32)) CHECK(F.is_one(F.pow(w, r * r - 1)));
    }
}

TEST_CASE("build_field_context certifies the order") {
    const auto ctx = build_field_context(22777, 1, 949);
    const auto& F = ctx.field;
    CHECK(ctx.order() == 15184);
    CHECK(F.is_one(F.pow(ctx.zeta, 15184)));
    CHECK_FALSE(F.is_one(F.pow(ctx.zeta, 7592)));
    CHECK_FALSE(F.is_one(F.pow(ctx.zeta, 15184 / 13)));
    CHECK_FALSE(F.is_one(F.pow(ctx.zeta, 15184 / 73)));
    CHECK(ctx.k == 2);
    CHECK(F.pow(ctx.zeta, 16 * 949 / 4) == ctx.zeta4);
    CHECK(F.is_one(F.pow(ctx.zeta4, 4)));
    CHECK_FALSE(F.is_one(F.pow(ctx.zeta4, 2)));
    CHECK(F.is_one(F.pow(ctx.zeta_f, 949)));
    CHECK(F.is_one(F.pow(ctx.zeta_2n3, 16)));
    CHECK_FALSE(F.is_one(F.pow(ctx.zeta_2n3, 8)));
    // zeta_2k lies in F_r and has order 2^k
    CHECK(pow_mod(ctx.zeta_2k.value, 4, 22777) == 1);
    CHECK(pow_mod(ctx.zeta_2k.value, 2, 22777) != 1);
}

TEST_CASE("build_field_context accepts and rejects per the congruence") {
    CHECK(45553 == 6 * 7592 + 1);
    CHECK_NOTHROW(build_field_context(45553, 1, 949));
    CHECK_THROWS_AS(build_field_context(22777, 3, 949), std::invalid_argument);
}

TEST_CASE("build_field_context is deterministic and alternates differ") {
    const auto a = build_field_context(45553, 1, 949);
    const auto b = build_field_context(45553, 1, 949);
    CHECK(a.zeta == b.zeta);
    const auto c = build_field_context(45553, 1, 949, 1);
    CHECK_FALSE(a.zeta == c.zeta);
    CHECK(c.field.is_one(c.field.pow(c.zeta, c.order())));
}

TEST_CASE("dlog_two_power fixed points") {
    const auto ctx = build_field_context(22777, 1, 949);
    const auto& fp = ctx.field.base();
    CHECK(dlog_two_power(fp.one(), ctx) == 0);
    CHECK(dlog_two_power(fp.from(22777 - 1), ctx) == 0);  // r = 1 mod 2^{k+1}
    CHECK_THROWS_AS(dlog_two_power(fp.zero(), ctx), std::invalid_argument);
}

TEST_CASE("dlog_two_power round trip") {
    std::mt19937_64 rng(5);
    // r = 1 mod 2^5 * 5 with k = 4 at n = 3
    for (u64 r : {2081ull, 5441ull, 13441ull}) {
        REQUIRE(is_prime(r));
        const auto ctx = build_field_context(r, 3, 5);
        REQUIRE(ctx.k == 4);
        const auto& fp = ctx.field.base();
        const u64 g = primitive_root(r);
        const u64 t = dlog_two_power(fp.from(g), ctx);
        REQUIRE(t % 2 == 1);  // a generator maps to a generator
        const u64 t_inv = inverse_mod_pow2(t, 4);
        for (int i = 0; i < 50; ++i) {
            const u64 e = rng() % 16;
            // x^{(r-1)/16} = zeta_2k^e, then scramble by a 16th power
            const u64 x = mul_mod(pow_mod(g, (e * t_inv) % 16, r), pow_mod(rng() % (r - 1) + 1, 16, r), r);
            CHECK(pow_mod(x, (r - 1) / 16, r) == pow_mod(ctx.zeta_2k.value, e, r));
            CHECK(dlog_two_power(fp.from(x), ctx) == e);
        }
        // homomorphism
        for (int i = 0; i < 50; ++i) {
            const FpElement x = fp.from(rng() % (r - 1) + 1), y = fp.from(rng() % (r - 1) + 1);
            CHECK(dlog_two_power(fp.mul(x, y), ctx) == ((dlog_two_power(x, ctx) + dlog_two_power(y, ctx)) & 15));
        }
    }
}

TEST_CASE("derive_lower_level gives compatible roots") {
    const u64 r = 45553;  // 1 mod 2^4 * 949 (valid at n = 2)
    const auto hi = build_field_context(r, 2, 949);
    const auto lo = derive_lower_level(hi, 1);
    const auto& F = hi.field;
    CHECK(lo.k == 2);
    CHECK(lo.zeta4 == hi.zeta4);
    CHECK(lo.zeta_f == F.pow(hi.zeta_f, 2));
    CHECK(lo.zeta_2n3 == F.pow(hi.zeta_2n3, 2));
    CHECK(lo.zeta_2k == hi.field.base().pow(hi.zeta_2k, 2));
    CHECK(F.pow(lo.zeta, 949) == lo.zeta_2n3);
    CHECK(F.pow(lo.zeta, 16) == lo.zeta_f);
    CHECK(F.is_one(F.pow(lo.zeta, lo.order())));
    CHECK_FALSE(F.is_one(F.pow(lo.zeta, lo.order() / 2)));
    CHECK_FALSE(F.is_one(F.pow(lo.zeta, lo.order() / 13)));
    CHECK_FALSE(F.is_one(F.pow(lo.zeta, lo.order() / 73)));
    const auto& fp = F.base();
    for (u64 x = 2; x < 200; ++x) CHECK(dlog_two_power(fp.from(x), hi) % 4 == dlog_two_power(fp.from(x), lo));
    CHECK_THROWS(derive_lower_level(hi, 3));
}

TEST_CASE("inverse_mod_pow2") {
    for (u64 a = 1; a < 2000; a += 2) {
        CHECK(((a * inverse_mod_pow2(a, 64))) == 1);
        CHECK(((a * inverse_mod_pow2(a, 10)) & 1023) == 1);
    }
}
