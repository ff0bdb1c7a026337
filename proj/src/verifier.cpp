#include "greenberg/verifier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

#include "greenberg/finite_field.hpp"
#include "greenberg/log_cache.hpp"

namespace greenberg {

using ring::Coeffs;
using ring::RingSpec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Functional {
    // sparse combination of records: (index, scalar)
    std::vector<std::pair<std::size_t, u64>> terms;
};

Coeffs combine(const std::vector<logs::PrimeLogRecord>& records, const Functional& h, bool beta,
               const RingSpec& full) {
    Coeffs out = full.zero();
    for (auto [idx, lambda] : h.terms) {
        const logs::LogPoly& p = beta ? records[idx].beta : records[idx].eta;
        const Coeffs t = p.to_t().coeffs;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + lambda * t[i]) & full.mask();
    }
    return out;
}

// B_h E_h' - B_h' E_h in the full ring
Coeffs pair_element(const Coeffs& beta_h, const Coeffs& eta_h, const Coeffs& beta_g, const Coeffs& eta_g,
                    const RingSpec& full) {
    const Coeffs bh = ring::divide_by_aug(beta_h, full);
    const Coeffs bg = ring::divide_by_aug(beta_g, full);
    return ring::sub(ring::poly_mul_mod(bh, eta_g, full), ring::poly_mul_mod(bg, eta_h, full), full);
}

void check_records(const std::vector<logs::PrimeLogRecord>& records, const RingSpec& spec) {
    for (const auto& rec : records) {
        if (rec.eta.n != spec.n() || rec.beta.n != spec.n() || rec.eta.k != spec.d()) {
            throw std::invalid_argument("pair functionals: record level does not match the ring");
        }
        if (rec.beta.augmentation() != 0) {
            throw std::logic_error("pair functionals: beta log at r = " + std::to_string(rec.r) +
                                   " is not in the augmentation ideal");
        }
    }
}

// h_{j,l} for j < l, in creation order, with the index of the later record
std::vector<std::pair<Functional, std::size_t>> first_stage(const std::vector<logs::PrimeLogRecord>& records,
                                                            int k) {
    std::vector<std::pair<Functional, std::size_t>> out;
    const u64 mask = (u64{1} << k) - 1;
    auto v2 = [&](u64 c) { return c == 0 ? k : std::min(k, std::countr_zero(c)); };
    for (std::size_t l = 0; l < records.size(); ++l) {
        for (std::size_t j = 0; j < l; ++j) {
            if (!records[j].delta || !records[l].delta) {
                throw std::invalid_argument("pair functionals: split case needs delta scalars");
            }
            const u64 cj = *records[j].delta & mask;
            const u64 cl = *records[l].delta & mask;
            if (cj == 0 && cl == 0) continue;
            const int s = std::min(v2(cj), v2(cl));
            Functional h;
            h.terms.push_back({l, (cj >> s) & mask});
            h.terms.push_back({j, (~(cl >> s) + 1) & mask});
            out.emplace_back(std::move(h), l);
        }
    }
    return out;
}

std::vector<Coeffs> nonsplit_elements(const std::vector<logs::PrimeLogRecord>& records, const RingSpec& spec,
                                      bool only_last) {
    check_records(records, spec);
    std::vector<Coeffs> out;
    const std::size_t start = only_last && !records.empty() ? records.size() - 1 : 0;
    for (std::size_t i = start; i < records.size(); ++i) {
        const Coeffs bi = records[i].beta.to_t().coeffs;
        const Coeffs ei = records[i].eta.to_t().coeffs;
        for (std::size_t j = 0; j < i; ++j) {
            out.push_back(pair_element(records[j].beta.to_t().coeffs, records[j].eta.to_t().coeffs, bi, ei, spec));
        }
    }
    return out;
}

std::vector<Coeffs> split_elements(const std::vector<logs::PrimeLogRecord>& records, const RingSpec& spec,
                                   bool only_last) {
    const int n = spec.n();
    const RingSpec full = RingSpec::full(n, spec.d());
    check_records(records, full);
    const auto hs = first_stage(records, spec.d());
    std::vector<Coeffs> betas, etas;
    for (const auto& [h, _] : hs) {
        betas.push_back(combine(records, h, true, full));
        etas.push_back(combine(records, h, false, full));
    }
    const std::size_t newest = records.empty() ? 0 : records.size() - 1;
    std::vector<Coeffs> out;
    for (std::size_t b = 0; b < hs.size(); ++b) {
        if (only_last && hs[b].second != newest) continue;
        for (std::size_t a = 0; a < b; ++a) {
            const Coeffs g = pair_element(betas[a], etas[a], betas[b], etas[b], full);
            out.push_back(spec.reduce(ring::divide_by_aug(g, full)));
        }
    }
    return out;
}

std::vector<logs::PrimeLogRecord> fetch_records(const std::vector<u64>& primes, int n, const quad::KernelSet& kernel,
                                                const VerifyConfig& config, int& cache_hits) {
    const bool use_cache = !config.cache_dir.empty() && config.zeta_alternate == 0;
    std::vector<logs::PrimeLogRecord> out(primes.size());
    std::vector<u64> missing;
    std::vector<std::size_t> missing_at;
    if (use_cache) {
        auto loaded = cache::load(config.cache_dir, kernel.f, n);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            auto it = loaded.records.find(primes[i]);
            if (it != loaded.records.end()) {
                out[i] = it->second;
                ++cache_hits;
            } else {
                missing.push_back(primes[i]);
                missing_at.push_back(i);
            }
        }
    } else {
        missing = primes;
        for (std::size_t i = 0; i < primes.size(); ++i) missing_at.push_back(i);
    }
    if (missing.empty()) return out;
    auto computed = logs::compute_records(missing, n, kernel, config.jobs, config.zeta_alternate);
    for (std::size_t i = 0; i < computed.size(); ++i) out[missing_at[i]] = computed[i];
    if (use_cache) cache::store(config.cache_dir, kernel.f, n, computed);
    return out;
}

}  // namespace

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::cardinality: return "a";
        case Criterion::norm_annihilation: return "b";
        case Criterion::trivial: return "trivial";
    }
    return "?";
}

std::vector<Coeffs> build_pair_functionals_nonsplit(const std::vector<logs::PrimeLogRecord>& records,
                                                    const RingSpec& spec) {
    return nonsplit_elements(records, spec, false);
}

std::vector<Coeffs> build_pair_functionals_split(const std::vector<logs::PrimeLogRecord>& records,
                                                 const RingSpec& spec) {
    return split_elements(records, spec, false);
}

std::vector<Coeffs> new_pair_functionals(const std::vector<logs::PrimeLogRecord>& records, const RingSpec& spec) {
    if (spec.presentation() == ring::Presentation::divided) return split_elements(records, spec, true);
    return nonsplit_elements(records, spec, true);
}

RingSpec level_spec(u64 f, int n) {
    return f % 8 == 1 ? RingSpec::divided(n, n + 1) : RingSpec::full(n, n + 1);
}

LevelResult run_level(const quad::QuadFieldInfo& info, int n, const VerifyConfig& config) {
    if (info.gate != quad::Gate::run_split && info.gate != quad::Gate::run_nonsplit) {
        throw std::invalid_argument("run_level: f = " + std::to_string(info.f) + " needs no level computation");
    }
    const auto t0 = Clock::now();
    const RingSpec spec = level_spec(info.f, n);
    const quad::KernelSet kernel = quad::character_kernel(info.f);
    LevelResult res{ring::HowellIdeal(spec)};
    res.n = n;

    std::vector<logs::PrimeLogRecord> records;
    int trailing = 0;
    auto absorb = [&](const logs::PrimeLogRecord& rec) {
        records.push_back({rec.r, rec.eta.to_t(), rec.beta.to_t(), rec.delta});
        res.primes_used.push_back(rec.r);
        bool grew = false;
        for (const Coeffs& g : new_pair_functionals(records, spec)) {
            ++res.elements_inserted;
            if (res.ideal.insert(g)) {
                grew = true;
                trailing = 0;
            } else {
                ++trailing;
            }
        }
        return grew;
    };

    if (!config.adaptive) {
        const auto primes = logs::find_split_primes(info.f, n, static_cast<std::size_t>(std::max(config.primes, 0)));
        for (const auto& rec : fetch_records(primes, n, kernel, config, res.cache_hits)) absorb(rec);
    } else {
        int quiet = 0;
        u64 last = 0;
        const std::size_t batch = static_cast<std::size_t>(std::max(config.jobs, 1));
        while (static_cast<int>(records.size()) < config.adaptive_prime_cap && quiet < config.adaptive_patience) {
            std::vector<u64> primes;
            while (primes.size() < batch &&
                   static_cast<int>(records.size() + primes.size()) < config.adaptive_prime_cap) {
                last = logs::next_split_prime(info.f, n, last);
                primes.push_back(last);
            }
            for (const auto& rec : fetch_records(primes, n, kernel, config, res.cache_hits)) {
                const bool grew = absorb(rec);
                // the first prime can never contribute, so it does not count
                if (records.size() > 1) quiet = grew ? 0 : quiet + 1;
                if (quiet >= config.adaptive_patience) break;
            }
        }
    }
    res.stabilized_after = trailing;
    res.criterion = check_termination(res, info);
    res.seconds = seconds_since(t0);
    return res;
}

std::optional<Criterion> check_termination(const LevelResult& level, const quad::QuadFieldInfo& info) {
    const int m = level.n;
    const auto& J = level.ideal;
    const RingSpec& spec = J.spec();
    if (m < 1) return std::nullopt;
    if (info.gate == quad::Gate::run_nonsplit) {
        if (!J.contains(spec.constant(u64{1} << m))) return std::nullopt;
        if (J.index_log2() < m + info.m0) return Criterion::cardinality;
        if (J.contains(ring::norm_element(m - 1, spec))) return Criterion::norm_annihilation;
        return std::nullopt;
    }
    if (info.gate == quad::Gate::run_split) {
        if (m < info.m0) return std::nullopt;
        if (!J.contains(spec.constant(u64{1} << (m - info.m0)))) return std::nullopt;
        if (J.index_log2() < m) return Criterion::cardinality;
        if (J.contains(ring::norm_element(m - 1, spec))) return Criterion::norm_annihilation;
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> find_n0(const ring::HowellIdeal& ideal) {
    const RingSpec& spec = ideal.spec();
    const int level = spec.n();
    if (level < 0) {
        for (int n = 0; n <= 20; ++n) {
            if (ideal.contains(ring::norm_element(n, spec))) return n;
        }
        return std::nullopt;
    }
    // beyond the level, (T+1)^{2^level} = 1 in the full ring, so the norm
    // element doubles at each step
    Coeffs top = ring::norm_element(level, spec);
    for (int n = 0; n <= level + spec.d(); ++n) {
        const Coeffs p = n <= level ? ring::norm_element(n, spec)
                                    : ring::scale(top, u64{1} << std::min(n - level, 63), spec);
        if (ideal.contains(p)) return n;
    }
    return std::nullopt;
}

VerificationReport verify(u64 f, const VerifyConfig& config) {
    if (auto why = quad::radicand_problem(f)) throw std::invalid_argument(*why);
    const auto t0 = Clock::now();
    VerificationReport report;
    report.f = f;
    report.info = quad::class_number(f);
    if (report.info.gate == quad::Gate::trivially_stable) {
        report.criterion = Criterion::trivial;
        report.stable_from = "0";
        report.n0 = 0;
        report.log2_index = 0;
        report.seconds = seconds_since(t0);
        return report;
    }
    for (int n = 1; n <= config.max_level; ++n) {
        report.levels.push_back(run_level(report.info, n, config));
        const LevelResult& level = report.levels.back();
        if (!level.criterion) continue;
        report.m = n;
        report.criterion = level.criterion;
        report.stable_from = *level.criterion == Criterion::cardinality ? "<= " + std::to_string(n - 1)
                                                                         : std::to_string(n - 1);
        report.reported = ring::canonical_generators(level.ideal);
        report.log2_index = level.ideal.index_log2();
        report.n0 = find_n0(level.ideal);
        break;
    }
    report.seconds = seconds_since(t0);
    return report;
}

}  // namespace greenberg
