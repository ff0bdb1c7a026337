#include "greenberg/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace greenberg::report {

using nlohmann::ordered_json;

namespace {

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

std::string ideal_text(const TableRow& row) {
    std::string out = "(";
    for (std::size_t i = 0; i < row.generators.size(); ++i) out += (i ? ", " : "") + row.generators[i];
    return out + ")";
}

std::string criterion_text(const VerificationReport& r) {
    return r.criterion ? to_string(*r.criterion) : "unresolved";
}

std::string level_ideal(const LevelResult& level) {
    try {
        return ring::canonical_generators(level.ideal).to_string();
    } catch (const std::exception& e) {
        return std::string("<") + e.what() + ">";
    }
}

ordered_json level_json(const LevelResult& level, bool timings) {
    ordered_json j;
    const auto& spec = level.ideal.spec();
    j["n"] = level.n;
    j["ring"] = {{"presentation", ring::to_string(spec.presentation())},
                 {"d", spec.d()},
                 {"rank", spec.rank()},
                 {"relation", ring::format_poly(spec.relation())}};
    j["primes"] = level.primes_used;
    j["elements_inserted"] = level.elements_inserted;
    j["stabilized_after"] = level.stabilized_after;
    j["cache_hits"] = level.cache_hits;
    j["ideal"] = level_ideal(level);
    j["log2_index"] = level.ideal.index_log2();
    ordered_json rows = ordered_json::array();
    for (const auto& row : level.ideal.howell_rows()) {
        rows.push_back({{"column", row.degree}, {"exponent", row.exponent}, {"coeffs", row.coeffs}});
    }
    j["howell_rows"] = rows;
    j["criterion"] = level.criterion ? ordered_json(to_string(*level.criterion)) : ordered_json(nullptr);
    if (timings) j["seconds"] = level.seconds;
    return j;
}

ordered_json report_json(const VerificationReport& r, bool timings) {
    ordered_json j;
    const TableRow row = summarize(r);
    j["f"] = r.f;
    j["mod8"] = row.mod8;
    j["gate"] = row.gate;
    j["discriminant"] = r.info.discriminant;
    j["class_number"] = r.info.h;
    j["narrow_class_number"] = r.info.h_narrow;
    j["unit_norm"] = r.info.unit_norm;
    j["m0"] = r.info.m0;
    j["m"] = r.m ? ordered_json(*r.m) : ordered_json(nullptr);
    j["criterion"] = row.criterion;
    j["stable_from"] = r.stable_from.empty() ? ordered_json(nullptr) : ordered_json(r.stable_from);
    j["J"] = r.reported ? ordered_json(r.reported->to_string()) : ordered_json(nullptr);
    j["generators"] = row.generators;
    j["n0"] = r.n0 ? ordered_json(*r.n0) : ordered_json(nullptr);
    j["log2_index"] = r.log2_index ? ordered_json(*r.log2_index) : ordered_json(nullptr);
    ordered_json levels = ordered_json::array();
    for (const auto& level : r.levels) levels.push_back(level_json(level, timings));
    j["levels"] = levels;
    if (timings) j["seconds"] = r.seconds;
    return j;
}

std::string markdown_report(const VerificationReport& r, bool timings) {
    std::ostringstream out;
    const auto& info = r.info;
    out << "## f = " << r.f << "\n\n";
    out << "- f mod 8 = " << r.f % 8 << ", D = " << info.discriminant << "\n";
    out << "- h = " << info.h << ", h+ = " << info.h_narrow << ", N(eps) = " << (info.unit_norm > 0 ? "+1" : "-1")
        << ", m0 = " << info.m0 << "\n";
    out << "- gate: " << quad::to_string(info.gate) << "\n";
    if (r.criterion == Criterion::trivial) {
        out << "- result: trivially stable (A_0 has odd order), no levels computed\n";
    } else if (r.resolved()) {
        out << "- result: terminated at m = " << *r.m << " by criterion (" << to_string(*r.criterion)
            << "), stable from level " << r.stable_from << "\n";
        out << "- J = " << r.reported->to_string() << "\n";
        out << "- n0 = " << opt_int(r.n0) << "\n";
        out << "- N = 2^" << opt_int(r.log2_index) << "\n";
    } else {
        out << "- result: unresolved up to level " << r.levels.size() << "\n";
    }
    if (!r.levels.empty()) {
        const bool divided = r.levels.front().ideal.spec().presentation() == ring::Presentation::divided;
        out << "\n| n | " << (divided ? "J'_n" : "J_n") << " | log2 index | primes | inserted | trailing no-ops | criterion";
        out << (timings ? " | time |\n" : " |\n");
        out << "|---|---|---|---|---|---|---" << (timings ? "|---|\n" : "|\n");
        for (const auto& level : r.levels) {
            out << "| " << level.n << " | " << level_ideal(level) << " | " << level.ideal.index_log2() << " | "
                << level.primes_used.size() << " | " << level.elements_inserted << " | " << level.stabilized_after
                << " | " << (level.criterion ? to_string(*level.criterion) : "-");
            if (timings) out << " | " << fmt_seconds(level.seconds);
            out << " |\n";
        }
    }
    if (timings) out << "\ntotal time: " << fmt_seconds(r.seconds) << "\n";
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<int> parse_opt_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_csv: bad integer '" + s + "'");
    return v;
}

const char* section_title(int cls) {
    switch (cls) {
        case 1: return "f = 1 mod 8";
        case 5: return "f = 5 mod 8";
        default: return "f = 3, 7 mod 8";
    }
}

}  // namespace

std::optional<Format> parse_format(const std::string& name) {
    if (name == "md" || name == "markdown") return Format::markdown;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    return std::nullopt;
}

TableRow summarize(const VerificationReport& r) {
    TableRow row;
    row.f = r.f;
    row.mod8 = static_cast<int>(r.f % 8);
    row.gate = quad::to_string(r.info.gate);
    row.m = r.m;
    row.criterion = criterion_text(r);
    row.n0 = r.n0;
    row.log2_index = r.log2_index;
    if (r.reported) {
        for (const auto& g : r.reported->generators) row.generators.push_back(ring::format_poly(g));
    }
    return row;
}

std::string csv_header() { return "f,mod8_class,gate,m,criterion,n0,log2_index,generators"; }

std::string csv_row(const TableRow& row) {
    std::string gens;
    for (std::size_t i = 0; i < row.generators.size(); ++i) gens += (i ? ";" : "") + row.generators[i];
    return std::to_string(row.f) + "," + std::to_string(row.mod8) + "," + row.gate + "," + opt_int(row.m) + "," +
           row.criterion + "," + opt_int(row.n0) + "," + opt_int(row.log2_index) + "," + gens;
}

std::vector<TableRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) throw std::invalid_argument("parse_csv: missing header");
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 8) throw std::invalid_argument("parse_csv: expected 8 columns in '" + line + "'");
        TableRow row;
        row.f = std::stoull(cells[0]);
        row.mod8 = std::stoi(cells[1]);
        row.gate = cells[2];
        row.m = parse_opt_int(cells[3]);
        row.criterion = cells[4];
        row.n0 = parse_opt_int(cells[5]);
        row.log2_index = parse_opt_int(cells[6]);
        if (!cells[7].empty()) row.generators = split(cells[7], ';');
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_report(const VerificationReport& r, Format format, bool timings) {
    switch (format) {
        case Format::markdown: return markdown_report(r, timings);
        case Format::csv: return csv_header() + "\n" + csv_row(summarize(r)) + "\n";
        case Format::json: return report_json(r, timings).dump(2) + "\n";
    }
    return {};
}

std::string render_table(const std::vector<VerificationReport>& reports, Format format,
                         const std::vector<std::string>& notes, bool timings) {
    if (format == Format::csv) {
        std::string out = csv_header() + "\n";
        for (const auto& r : reports) out += csv_row(summarize(r)) + "\n";
        return out;
    }
    if (format == Format::json) {
        ordered_json j;
        j["notes"] = notes;
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(report_json(r, timings));
        j["reports"] = arr;
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    for (const auto& note : notes) out << "> " << note << "\n";
    if (!notes.empty()) out << "\n";

    struct Group {
        TableRow key;
        std::vector<u64> fs;
    };
    std::vector<u64> trivial, unresolved;
    std::map<int, std::vector<Group>> sections;  // keyed 1, 3 (for 3 and 7), 5
    for (const auto& r : reports) {
        const TableRow row = summarize(r);
        if (row.criterion == "trivial") {
            trivial.push_back(r.f);
            continue;
        }
        if (row.criterion == "unresolved") {
            unresolved.push_back(r.f);
            continue;
        }
        const int cls = row.mod8 == 7 ? 3 : row.mod8;
        auto& groups = sections[cls];
        Group* hit = nullptr;
        for (auto& g : groups) {
            if (g.key.generators == row.generators && g.key.n0 == row.n0 && g.key.log2_index == row.log2_index) hit = &g;
        }
        if (!hit) {
            groups.push_back({row, {}});
            hit = &groups.back();
        }
        hit->fs.push_back(r.f);
    }
    for (int cls : {3, 5, 1}) {
        auto it = sections.find(cls);
        if (it == sections.end()) continue;
        out << "### " << section_title(cls) << "\n\n| J | n0 | N | f |\n|---|---|---|---|\n";
        for (const auto& g : it->second) {
            out << "| " << ideal_text(g.key) << " | " << opt_int(g.key.n0) << " | 2^" << opt_int(g.key.log2_index)
                << " | ";
            for (std::size_t i = 0; i < g.fs.size(); ++i) out << (i ? ", " : "") << g.fs[i];
            out << " |\n";
        }
        out << "\n";
    }
    auto list = [&](const char* title, const std::vector<u64>& fs) {
        if (fs.empty()) return;
        out << "### " << title << "\n\n";
        for (std::size_t i = 0; i < fs.size(); ++i) out << (i ? ", " : "") << fs[i];
        out << "\n\n";
    };
    list("trivially stable", trivial);
    list("unresolved", unresolved);
    if (reports.empty()) out << "(no admissible f in range)\n";
    if (timings) {
        double total = 0;
        for (const auto& r : reports) total += r.seconds;
        out << "total time: " << fmt_seconds(total) << "\n";
    }
    return out.str();
}

}  // namespace greenberg::report
