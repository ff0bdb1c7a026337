#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "greenberg/finite_field.hpp"
#include "greenberg/quadratic.hpp"

namespace greenberg::logs {

using u64 = std::uint64_t;

enum class Basis { x, t };

/// An element of Z/2^k[X]/(X^{2^n} - 1): entry i is the coefficient of X^i
/// (or T^i in the T-basis, T = X - 1).
struct LogPoly {
    int n = 0;
    int k = 1;
    std::vector<u64> coeffs;
    Basis basis = Basis::x;

    LogPoly to_t() const;
    LogPoly to_x() const;
    /// Value at X = 1 mod 2^k.
    u64 augmentation() const;

    friend bool operator==(const LogPoly&, const LogPoly&) = default;
};

/// The three log-polynomials at one prime, all taken in one FieldContext.
/// eta and beta are kept in the X-basis.
struct PrimeLogRecord {
    u64 r = 0;
    LogPoly eta;
    LogPoly beta;
    std::optional<u64> delta;  // present iff f = 1 mod 8

    friend bool operator==(const PrimeLogRecord&, const PrimeLogRecord&) = default;
};

/// The first `count` primes r = 1 + t*2^{n+2}f, t = 1, 2, ...
/// Throws std::runtime_error once t passes the sweep cap.
std::vector<u64> find_split_primes(u64 f, int n, std::size_t count, u64 sweep_cap = 10'000'000);

/// Next split prime above `after` (0 for the first).
u64 next_split_prime(u64 f, int n, u64 after, u64 sweep_cap = 10'000'000);

LogPoly log_poly_eta(const ff::FieldContext& ctx, const quad::KernelSet& kernel);
LogPoly log_poly_beta(const ff::FieldContext& ctx);
/// The scalar c with f_r(delta') = c * N_n. Throws std::invalid_argument
/// unless f = 1 mod 8.
u64 log_scalar_delta(const ff::FieldContext& ctx, const quad::KernelSet& kernel, bool f_prime);

/// Builds the context at r and evaluates every log-polynomial the level needs.
PrimeLogRecord compute_record(u64 r, int n, const quad::KernelSet& kernel, int alternate = 0);

/// Records for several primes, computed on up to `jobs` threads and returned
/// in the order of `primes`.
std::vector<PrimeLogRecord> compute_records(const std::vector<u64>& primes, int n,
                                            const quad::KernelSet& kernel, int jobs = 1,
                                            int alternate = 0);

}  // namespace greenberg::logs
