#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greenberg/verifier.hpp"

namespace greenberg::report {

enum class Format { markdown, csv, json };

std::optional<Format> parse_format(const std::string& name);

/// The flat per-f summary that table output and CSV carry.
struct TableRow {
    u64 f = 0;
    int mod8 = 0;
    std::string gate;
    std::optional<int> m;
    std::string criterion;  // "a", "b", "trivial" or "unresolved"
    std::optional<int> n0;
    std::optional<int> log2_index;
    std::vector<std::string> generators;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

TableRow summarize(const VerificationReport& r);

std::string csv_header();
std::string csv_row(const TableRow& row);
/// Inverse of the CSV emitter (header line required). Throws
/// std::invalid_argument on malformed input.
std::vector<TableRow> parse_csv(const std::string& text);

/// Single-f report. Timings are left out when `timings` is false so output
/// can be compared byte for byte.
std::string render_report(const VerificationReport& r, Format format, bool timings);

/// Range report: rows grouped by identical (J, n0, N) in three sections by
/// f mod 8, plus the trivially stable and unresolved f. `notes` go on top.
std::string render_table(const std::vector<VerificationReport>& reports, Format format,
                         const std::vector<std::string>& notes, bool timings);

}  // namespace greenberg::report
