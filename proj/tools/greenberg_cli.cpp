// Command-line front end: single-f verification, range tables, cache upkeep.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "greenberg/log_cache.hpp"
#include "greenberg/report.hpp"
#include "greenberg/verifier.hpp"

namespace {

using greenberg::u64;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnresolved = 2;

struct Options {
    u64 f = 0;
    u64 min = 3;
    u64 max = 0;
    int primes = 15;
    int max_level = 13;
    bool adaptive = false;
    std::string format = "md";
    std::string cache_dir;
    bool no_cache = false;
    int jobs = 1;
    bool no_timings = false;
    int zeta_alternate = 0;
    bool verify_cache = false;
};

std::string resolve_cache_dir(const Options& o) {
    if (o.no_cache) return {};
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* env = std::getenv("GREENBERG_CACHE"); env && *env) return env;
    return ".greenberg-cache";
}

greenberg::VerifyConfig make_config(const Options& o) {
    greenberg::VerifyConfig c;
    c.primes = o.primes;
    c.max_level = o.max_level;
    c.adaptive = o.adaptive;
    c.jobs = o.jobs;
    c.cache_dir = resolve_cache_dir(o);
    c.zeta_alternate = o.zeta_alternate;
    c.timings = !o.no_timings;
    return c;
}

void add_run_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--primes", o.primes, "auxiliary primes per level")->check(CLI::PositiveNumber);
    cmd->add_option("--max-level", o.max_level, "give up after this level")->check(CLI::Range(1, 16));
    cmd->add_flag("--adaptive", o.adaptive, "add primes until 5 in a row contribute nothing");
    cmd->add_option("--format", o.format, "md, csv or json")->check(CLI::IsMember({"md", "markdown", "csv", "json"}));
    cmd->add_option("--cache-dir", o.cache_dir, "log cache directory (default: $GREENBERG_CACHE or .greenberg-cache)");
    cmd->add_flag("--no-cache", o.no_cache, "neither read nor write the log cache");
    cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timings", o.no_timings, "omit wall-clock times so output is reproducible");
    cmd->add_option("--zeta-alternate", o.zeta_alternate, "use a later root of unity in every context (bypasses cache)")
        ->check(CLI::NonNegativeNumber);
}

int cmd_verify(const Options& o) {
    if (auto why = greenberg::quad::radicand_problem(o.f)) {
        std::cerr << "error: " << *why << "\n";
        return kExitUsage;
    }
    const auto config = make_config(o);
    const auto report = greenberg::verify(o.f, config);
    std::cout << greenberg::report::render_report(report, *greenberg::report::parse_format(o.format), config.timings);
    return report.resolved() ? kExitOk : kExitUnresolved;
}

int cmd_table(const Options& o) {
    if (o.max < o.min) {
        std::cerr << "error: --max must be at least --min\n";
        return kExitUsage;
    }
    std::vector<u64> fs;
    std::vector<u64> skipped;
    for (u64 f = o.min; f <= o.max; ++f) {
        if (greenberg::quad::radicand_problem(f)) {
            skipped.push_back(f);
        } else {
            fs.push_back(f);
        }
    }
    std::vector<std::string> notes;
    if (!skipped.empty()) {
        std::string list;
        for (std::size_t i = 0; i < skipped.size() && i < 40; ++i) list += (i ? ", " : "") + std::to_string(skipped[i]);
        if (skipped.size() > 40) list += ", ...";
        notes.push_back("skipped " + std::to_string(skipped.size()) + " value(s) that are not odd squarefree >= 3: " +
                        list);
        notes.push_back("Q(sqrt f) and Q(sqrt 2f) have the same cyclotomic Z2-extension, so even radicands reduce "
                        "to their odd part");
    }

    auto config = make_config(o);
    const int width = std::max(1, std::min<int>(o.jobs, static_cast<int>(fs.size())));
    if (width > 1) config.jobs = 1;  // parallel across f instead of across primes
    std::vector<greenberg::VerificationReport> reports(fs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::string first_error;
    auto worker = [&] {
        for (std::size_t i = next++; i < fs.size(); i = next++) {
            try {
                reports[i] = greenberg::verify(fs[i], config);
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mutex);
                if (first_error.empty()) first_error = "f = " + std::to_string(fs[i]) + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    std::cout << greenberg::report::render_table(reports, *greenberg::report::parse_format(o.format), notes,
                                                 config.timings);
    const bool all_resolved =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.resolved(); });
    return all_resolved ? kExitOk : kExitUnresolved;
}

int cmd_cache_inspect(const Options& o) {
    const std::string dir = resolve_cache_dir(o);
    if (dir.empty()) {
        std::cerr << "error: no cache directory\n";
        return kExitUsage;
    }
    const auto entries = greenberg::cache::inspect(dir);
    std::cout << "cache: " << dir << "\n";
    if (entries.empty()) std::cout << "(empty)\n";
    for (const auto& e : entries) {
        std::cout << "f = " << e.f << ", n = " << e.n << ": " << e.records << " record(s)";
        if (e.corrupted) std::cout << ", " << e.corrupted << " corrupted line(s) skipped";
        std::cout << "\n";
    }
    if (!o.verify_cache) return kExitOk;
    const auto outcome = greenberg::cache::verify_sample(dir, 0.1);
    for (const auto& p : outcome.problems) std::cout << "problem: " << p << "\n";
    std::cout << "verify-cache: " << outcome.checked << " of " << outcome.total << " record(s) recomputed, "
              << outcome.mismatched << " mismatch(es)\n";
    return outcome.mismatched == 0 ? kExitOk : kExitUnresolved;
}

int cmd_cache_clear(const Options& o) {
    const std::string dir = resolve_cache_dir(o);
    if (dir.empty()) {
        std::cerr << "error: no cache directory\n";
        return kExitUsage;
    }
    std::cout << "removed " << greenberg::cache::clear(dir) << " cache file(s) from " << dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Certify stabilization of 2-class groups in the cyclotomic Z2-extension of Q(sqrt f)"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the level-by-level algorithm for one f");
    verify->add_option("--f", o.f, "odd squarefree f >= 3")->required();
    add_run_flags(verify, o);

    auto* table = app.add_subcommand("table", "verify every admissible f in a range and group the results");
    table->add_option("--min", o.min, "smallest f");
    table->add_option("--max", o.max, "largest f")->required();
    add_run_flags(table, o);

    auto* cache = app.add_subcommand("cache", "inspect or clear the log cache");
    cache->require_subcommand(1);
    auto* inspect = cache->add_subcommand("inspect", "list cached (f, n) entries");
    inspect->add_option("--cache-dir", o.cache_dir, "log cache directory");
    inspect->add_flag("--verify-cache", o.verify_cache, "recompute a 10% sample and compare");
    auto* clear = cache->add_subcommand("clear", "remove every cache file");
    clear->add_option("--cache-dir", o.cache_dir, "log cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(o);
        if (table->parsed()) return cmd_table(o);
        if (inspect->parsed()) return cmd_cache_inspect(o);
        if (clear->parsed()) return cmd_cache_clear(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnresolved + 1;
    }
    return kExitUsage;
}
