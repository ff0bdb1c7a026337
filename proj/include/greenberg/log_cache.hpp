#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greenberg/cyclo_logs.hpp"

namespace greenberg::cache {

using u64 = std::uint64_t;

/// First line of every cache file. Files with any other header are ignored
/// as stale.
inline constexpr const char* kHeader = "# greenberg-logcache v1";

/// One text file per (f, n): <dir>/f<f>_n<n>.cache, one record per line:
///   f n r | eta coeffs | beta coeffs | delta or -
std::string cache_path(const std::string& dir, u64 f, int n);

std::string format_record(u64 f, int n, const logs::PrimeLogRecord& rec);
/// Empty on a malformed line; `why` receives the reason.
std::optional<logs::PrimeLogRecord> parse_record(const std::string& line, u64 f, int n,
                                                 std::string* why = nullptr);

struct LoadResult {
    std::map<u64, logs::PrimeLogRecord> records;  // keyed by r
    std::vector<std::string> problems;            // corrupted lines, stale header
};

/// Missing file or directory gives an empty result.
LoadResult load(const std::string& dir, u64 f, int n);

/// Merges `records` into the file for (f, n). The file is rewritten through a
/// temporary and renamed into place.
void store(const std::string& dir, u64 f, int n, const std::vector<logs::PrimeLogRecord>& records);

struct EntrySummary {
    u64 f = 0;
    int n = 0;
    std::size_t records = 0;
    std::size_t corrupted = 0;
    std::string path;
};

/// Cache files in `dir`, sorted by (f, n).
std::vector<EntrySummary> inspect(const std::string& dir);

/// Removes every cache file in `dir`; returns how many were removed.
std::size_t clear(const std::string& dir);

struct VerifyOutcome {
    std::size_t total = 0;
    std::size_t checked = 0;
    std::size_t mismatched = 0;
    std::vector<std::string> problems;
};

/// Recomputes a deterministic sample (at least one record per nonempty file,
/// `fraction` of the records overall) and compares bit for bit.
VerifyOutcome verify_sample(const std::string& dir, double fraction = 0.1, u64 seed = 1);

}  // namespace greenberg::cache
