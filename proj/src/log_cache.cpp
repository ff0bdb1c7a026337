#include "greenberg/log_cache.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace greenberg::cache {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

bool parse_u64(const std::string& tok, u64& value) {
    if (tok.empty() || tok.size() > 20) return false;
    value = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + static_cast<u64>(c - '0');
    }
    return true;
}

bool parse_coeffs(const std::string& field, std::size_t expected, u64 bound, std::vector<u64>& out) {
    std::istringstream in(field);
    std::string tok;
    out.clear();
    while (in >> tok) {
        u64 v;
        if (!parse_u64(tok, v) || v >= bound) return false;
        out.push_back(v);
    }
    return out.size() == expected;
}

std::string join(const std::vector<u64>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string cache_path(const std::string& dir, u64 f, int n) {
    return (fs::path(dir) / ("f" + std::to_string(f) + "_n" + std::to_string(n) + ".cache")).string();
}

std::string format_record(u64 f, int n, const logs::PrimeLogRecord& rec) {
    const auto eta = rec.eta.to_x();
    const auto beta = rec.beta.to_x();
    std::string line = std::to_string(f) + " " + std::to_string(n) + " " + std::to_string(rec.r) + " | ";
    line += join(eta.coeffs) + " | " + join(beta.coeffs) + " | ";
    line += rec.delta ? std::to_string(*rec.delta) : "-";
    return line;
}

std::optional<logs::PrimeLogRecord> parse_record(const std::string& line, u64 f, int n, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<logs::PrimeLogRecord> {
        if (why) *why = msg;
        return std::nullopt;
    };
    const auto fields = split(line, '|');
    if (fields.size() != 4) return fail("expected 4 '|'-separated fields");
    std::istringstream head(fields[0]);
    std::string tf, tn, tr, extra;
    if (!(head >> tf >> tn >> tr) || (head >> extra)) return fail("bad key field");
    u64 lf, ln, r;
    if (!parse_u64(tf, lf) || !parse_u64(tn, ln) || !parse_u64(tr, r)) return fail("bad key field");
    if (lf != f || ln != static_cast<u64>(n)) return fail("key does not match the file");
    const u64 step = (u64{1} << (n + 2)) * f;
    if (r % step != 1 || !ff::is_prime(r)) return fail("r is not a split prime for this (f, n)");

    const int k = n + 1;
    const std::size_t len = std::size_t{1} << n;
    logs::PrimeLogRecord rec;
    rec.r = r;
    rec.eta = {n, k, {}, logs::Basis::x};
    rec.beta = {n, k, {}, logs::Basis::x};
    if (!parse_coeffs(fields[1], len, u64{1} << k, rec.eta.coeffs)) return fail("bad eta coefficients");
    if (!parse_coeffs(fields[2], len, u64{1} << k, rec.beta.coeffs)) return fail("bad beta coefficients");
    if (rec.beta.augmentation() != 0) return fail("beta coefficients do not sum to 0");
    std::istringstream tail(fields[3]);
    std::string td;
    if (!(tail >> td) || (tail >> extra)) return fail("bad delta field");
    if (td == "-") {
        if (f % 8 == 1) return fail("delta missing");
    } else {
        u64 d;
        if (!parse_u64(td, d) || d >= (u64{1} << k) || f % 8 != 1) return fail("bad delta field");
        rec.delta = d;
    }
    return rec;
}

LoadResult load(const std::string& dir, u64 f, int n) {
    LoadResult out;
    const std::string path = cache_path(dir, f, n);
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        out.problems.push_back(path + ": stale or missing header, file ignored");
        return out;
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string why;
        auto rec = parse_record(line, f, n, &why);
        if (!rec) {
            out.problems.push_back(path + ":" + std::to_string(lineno) + ": " + why + ", skipped");
            continue;
        }
        out.records[rec->r] = *rec;
    }
    return out;
}

void store(const std::string& dir, u64 f, int n, const std::vector<logs::PrimeLogRecord>& records) {
    fs::create_directories(dir);
    auto merged = load(dir, f, n).records;
    for (const auto& rec : records) merged[rec.r] = rec;
    const std::string path = cache_path(dir, f, n);
    // unique temporary per writer so concurrent processes never interleave
    std::random_device rd;
    const std::string tmp = path + ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp);
        out << kHeader << '\n';
        for (const auto& [r, rec] : merged) out << format_record(f, n, rec) << '\n';
        if (!out) throw std::runtime_error("cache: write failed for " + tmp);
    }
    fs::rename(tmp, path);
}

namespace {

struct FileKey {
    u64 f;
    int n;
    fs::path path;
};

std::vector<FileKey> cache_files(const std::string& dir) {
    std::vector<FileKey> out;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return out;
    const std::regex pattern(R"(f(\d+)_n(\d+)\.cache)");
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (!entry.is_regular_file() || !std::regex_match(name, m, pattern)) continue;
        out.push_back({std::stoull(m[1].str()), std::stoi(m[2].str()), entry.path()});
    }
    std::sort(out.begin(), out.end(), [](const FileKey& a, const FileKey& b) {
        return a.f != b.f ? a.f < b.f : a.n < b.n;
    });
    return out;
}

}  // namespace

std::vector<EntrySummary> inspect(const std::string& dir) {
    std::vector<EntrySummary> out;
    for (const auto& key : cache_files(dir)) {
        auto loaded = load(dir, key.f, key.n);
        out.push_back({key.f, key.n, loaded.records.size(), loaded.problems.size(), key.path.string()});
    }
    return out;
}

std::size_t clear(const std::string& dir) {
    std::size_t removed = 0;
    for (const auto& key : cache_files(dir)) removed += fs::remove(key.path) ? 1 : 0;
    return removed;
}

VerifyOutcome verify_sample(const std::string& dir, double fraction, u64 seed) {
    VerifyOutcome out;
    std::mt19937_64 rng(seed);
    for (const auto& key : cache_files(dir)) {
        auto loaded = load(dir, key.f, key.n);
        for (auto& p : loaded.problems) out.problems.push_back(p);
        if (loaded.records.empty()) continue;
        std::vector<const logs::PrimeLogRecord*> recs;
        for (const auto& [r, rec] : loaded.records) recs.push_back(&rec);
        out.total += recs.size();
        std::shuffle(recs.begin(), recs.end(), rng);
        const auto want = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(recs.size()) + 0.999));
        const quad::KernelSet kernel = quad::character_kernel(key.f);
        for (std::size_t i = 0; i < std::min(want, recs.size()); ++i) {
            ++out.checked;
            const auto fresh = logs::compute_record(recs[i]->r, key.n, kernel);
            if (!(fresh == *recs[i])) {
                ++out.mismatched;
                out.problems.push_back(key.path.string() + ": r = " + std::to_string(recs[i]->r) +
                                       " differs from recomputation");
            }
        }
    }
    return out;
}

}  // namespace greenberg::cache
