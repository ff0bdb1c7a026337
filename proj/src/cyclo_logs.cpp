#include "greenberg/cyclo_logs.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "greenberg/group_ring.hpp"

namespace greenberg::logs {

using ff::Fp2Element;
using ff::FpElement;

namespace {

u64 mask_bits(int k) { return (u64{1} << k) - 1; }

void require_level(const ff::FieldContext& ctx) {
    if (ctx.n < 0 || ctx.k != ctx.n + 1) throw std::invalid_argument("log poly: inconsistent context");
}

FpElement rational(const ff::QuadraticExtension& F, const Fp2Element& x, const char* who) {
    if (!F.in_base_field(x)) {
        throw std::logic_error(std::string(who) + ": product left F_r (inconsistent context)");
    }
    return x.a;
}

}  // namespace

LogPoly LogPoly::to_t() const {
    if (basis == Basis::t) return *this;
    LogPoly out = *this;
    out.coeffs = ring::x_to_t(coeffs, k);
    out.basis = Basis::t;
    return out;
}

LogPoly LogPoly::to_x() const {
    if (basis == Basis::x) return *this;
    LogPoly out = *this;
    out.coeffs = ring::t_to_x(coeffs, k);
    out.basis = Basis::x;
    return out;
}

u64 LogPoly::augmentation() const {
    if (basis == Basis::t) return coeffs.empty() ? 0 : coeffs[0];
    u64 s = 0;
    for (u64 c : coeffs) s += c;
    return s & mask_bits(k);
}

u64 next_split_prime(u64 f, int n, u64 after, u64 sweep_cap) {
    const u64 step = (u64{1} << (n + 2)) * f;
    u64 t = after < 1 ? 1 : (after - 1) / step + 1;
    for (; t <= sweep_cap; ++t) {
        const u64 r = 1 + t * step;
        if (r > after && ff::is_prime(r)) return r;
    }
    throw std::runtime_error("find_split_primes: sweep cap reached for f = " + std::to_string(f) +
                             ", n = " + std::to_string(n));
}

std::vector<u64> find_split_primes(u64 f, int n, std::size_t count, u64 sweep_cap) {
    std::vector<u64> out;
    u64 last = 0;
    while (out.size() < count) {
        last = next_split_prime(f, n, last, sweep_cap);
        out.push_back(last);
    }
    return out;
}

LogPoly log_poly_eta(const ff::FieldContext& ctx, const quad::KernelSet& kernel) {
    require_level(ctx);
    if (kernel.f != ctx.f) throw std::invalid_argument("log_poly_eta: kernel does not match the context");
    const auto& F = ctx.field;
    const int n = ctx.n;
    const u64 order8 = u64{1} << (n + 3);

    std::vector<Fp2Element> za, za_inv;
    za.reserve(kernel.residues.size());
    za_inv.reserve(kernel.residues.size());
    for (u64 a : kernel.residues) {
        za.push_back(F.pow(ctx.zeta_f, a));
        za_inv.push_back(F.pow(ctx.zeta_f, ctx.f - a));
    }

    LogPoly out{n, ctx.k, std::vector<u64>(std::size_t{1} << n, 0), Basis::x};
    u64 e = 1;  // 3^i mod 2^{n+3}
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        const Fp2Element A = F.pow(ctx.zeta_2n3, e);
        const Fp2Element A_inv = F.pow(ctx.zeta_2n3, order8 - e);
        Fp2Element prod = F.pow(F.pow(ctx.zeta4, e & 3), kernel.residues.size());
        for (std::size_t j = 0; j < za.size(); ++j) {
            const Fp2Element t = F.sub(F.mul(A, za[j]), F.mul(A_inv, za_inv[j]));
            if (t.a.value == 0 && t.b.value == 0) throw std::logic_error("log_poly_eta: zero factor");
            prod = F.mul(prod, t);
        }
        // With |ker| odd (f = 3 mod 4 prime) Frobenius flips the sign of the
        // product whenever zeta_{2^{n+3}} is not in F_r: eta_n itself is not in
        // F_n then. Those f have odd class number and never reach this point
        // from the verifier.
        if (!F.in_base_field(prod) && za.size() % 2 == 1) {
            throw std::invalid_argument("log_poly_eta: eta_n is not F_r-rational at r = " + std::to_string(ctx.r) +
                                        " for prime f = 3 mod 4");
        }
        out.coeffs[i] = ff::dlog_two_power(rational(F, prod, "log_poly_eta"), ctx);
        e = (e * 3) & (order8 - 1);
    }
    return out;
}

LogPoly log_poly_beta(const ff::FieldContext& ctx) {
    require_level(ctx);
    const auto& F = ctx.field;
    const auto& fp = F.base();
    const int n = ctx.n;
    const u64 order4 = u64{1} << (n + 2);
    const FpElement z = rational(F, F.mul(ctx.zeta_2n3, ctx.zeta_2n3), "log_poly_beta");

    LogPoly out{n, ctx.k, std::vector<u64>(std::size_t{1} << n, 0), Basis::x};
    u64 e = 1;  // 3^i mod 2^{n+2}
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        const u64 e_next = (e * 3) & (order4 - 1);
        // (3^i - 3^{i+1}) / 2 = -3^i
        const FpElement twist = fp.pow(z, order4 - e);
        const FpElement num = fp.sub(fp.one(), fp.pow(z, e_next));
        const FpElement den = fp.sub(fp.one(), fp.pow(z, e));
        if (num.value == 0 || den.value == 0) throw std::logic_error("log_poly_beta: zero factor");
        out.coeffs[i] = ff::dlog_two_power(fp.mul(twist, fp.mul(num, fp.inv(den))), ctx);
        e = e_next;
    }
    return out;
}

u64 log_scalar_delta(const ff::FieldContext& ctx, const quad::KernelSet& kernel, bool f_prime) {
    require_level(ctx);
    const u64 f = ctx.f;
    if (f % 8 != 1) throw std::invalid_argument("log_scalar_delta: requires f = 1 mod 8");
    if (kernel.f != f || kernel.sign_case != quad::SignCase::chi_f) {
        throw std::invalid_argument("log_scalar_delta: kernel does not match the context");
    }
    const auto& F = ctx.field;
    const auto& fp = F.base();
    const FpElement zf = rational(F, ctx.zeta_f, "log_scalar_delta");
    auto one_minus = [&](u64 a) {
        const FpElement v = fp.sub(fp.one(), fp.pow(zf, a % f));
        if (v.value == 0) throw std::logic_error("log_scalar_delta: zero factor");
        return v;
    };

    FpElement prod = fp.one();
    if (!f_prime) {
        for (u64 a : kernel.residues) prod = fp.mul(prod, one_minus(a));
    } else {
        u64 s = 2;
        while (kernel.contains(s)) ++s;
        const u64 inv2 = (f + 1) / 2;
        for (u64 a : kernel.residues) {
            if (a > (f - 1) / 2) continue;
            const u64 ex = ff::mul_mod(ff::mul_mod(a, s - 1, f), inv2, f);
            const FpElement term = fp.mul(fp.pow(zf, ex), fp.mul(one_minus(a), fp.inv(one_minus(ff::mul_mod(a, s, f)))));
            prod = fp.mul(prod, term);
        }
    }
    return ff::dlog_two_power(prod, ctx);
}

PrimeLogRecord compute_record(u64 r, int n, const quad::KernelSet& kernel, int alternate) {
    const ff::FieldContext ctx = ff::build_field_context(r, n, kernel.f, alternate);
    PrimeLogRecord rec;
    rec.r = r;
    rec.eta = log_poly_eta(ctx, kernel);
    rec.beta = log_poly_beta(ctx);
    if (kernel.f % 8 == 1) rec.delta = log_scalar_delta(ctx, kernel, ff::is_prime(kernel.f));
    return rec;
}

std::vector<PrimeLogRecord> compute_records(const std::vector<u64>& primes, int n,
                                            const quad::KernelSet& kernel, int jobs, int alternate) {
    std::vector<PrimeLogRecord> out(primes.size());
    const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), primes.size());
    if (width <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) out[i] = compute_record(primes[i], n, kernel, alternate);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) {
            try {
                out[i] = compute_record(primes[i], n, kernel, alternate);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace greenberg::logs
