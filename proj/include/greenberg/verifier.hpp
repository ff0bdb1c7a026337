#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greenberg/cyclo_logs.hpp"
#include "greenberg/group_ring.hpp"
#include "greenberg/quadratic.hpp"

namespace greenberg {

using u64 = std::uint64_t;

enum class Criterion { cardinality, norm_annihilation, trivial };

/// "a", "b" or "trivial".
const char* to_string(Criterion c);

struct VerifyConfig {
    int primes = 15;
    int max_level = 13;
    bool adaptive = false;
    int adaptive_patience = 5;    // consecutive primes that add nothing
    int adaptive_prime_cap = 60;
    int jobs = 1;
    std::string cache_dir;        // empty: no cache
    int zeta_alternate = 0;       // nonzero bypasses the cache
    bool timings = true;
};

struct LevelResult {
    int n = 0;
    ring::HowellIdeal ideal;
    std::vector<u64> primes_used;
    int elements_inserted = 0;
    int stabilized_after = 0;     // trailing insertions that were no-ops
    int cache_hits = 0;
    double seconds = 0;
    std::optional<Criterion> criterion;

    explicit LevelResult(ring::HowellIdeal I) : ideal(std::move(I)) {}
};

struct VerificationReport {
    u64 f = 0;
    quad::QuadFieldInfo info;
    std::optional<int> m;
    std::optional<Criterion> criterion;
    std::string stable_from;      // "m-1" or "<= m-1", empty when unresolved
    std::optional<ring::ReportedIdeal> reported;
    std::optional<int> n0;
    std::optional<int> log2_index;
    std::vector<LevelResult> levels;
    double seconds = 0;

    bool resolved() const { return criterion.has_value(); }
};

/// g_{i,j} = (beta_i / T) eta_j - (beta_j / T) eta_i over all pairs i < j,
/// in the full ring Z/2^{n+1}[T]/((T+1)^{2^n} - 1).
std::vector<ring::Coeffs> build_pair_functionals_nonsplit(const std::vector<logs::PrimeLogRecord>& records,
                                                          const ring::RingSpec& spec);

/// Two-stage construction for f = 1 mod 8. `spec` is the divided ring; the
/// products are formed in the full ring of the same level and precision and
/// divided by T on the way down.
std::vector<ring::Coeffs> build_pair_functionals_split(const std::vector<logs::PrimeLogRecord>& records,
                                                       const ring::RingSpec& spec);

/// Incremental form of the two builders: the elements that appear when
/// records.back() joins records[0 .. size-2].
std::vector<ring::Coeffs> new_pair_functionals(const std::vector<logs::PrimeLogRecord>& records,
                                               const ring::RingSpec& spec);

/// Ring the level-n ideal lives in for this f.
ring::RingSpec level_spec(u64 f, int n);

LevelResult run_level(const quad::QuadFieldInfo& info, int n, const VerifyConfig& config);

std::optional<Criterion> check_termination(const LevelResult& level, const quad::QuadFieldInfo& info);

/// Least n with sum_{i < 2^n} (T+1)^i in the ideal, searching up to
/// n = level + d. Empty if none (cannot happen for a finite-index ideal).
std::optional<int> find_n0(const ring::HowellIdeal& ideal);

/// Throws std::invalid_argument for an excluded f.
VerificationReport verify(u64 f, const VerifyConfig& config);

}  // namespace greenberg
