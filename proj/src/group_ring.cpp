#include "greenberg/group_ring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

#include "greenberg/finite_field.hpp"

namespace greenberg::ring {

namespace {

// C(N, i) mod 2^64 for i = 0..N, tracking the 2-part separately so that the
// odd part can be divided exactly.
std::vector<u64> binomial_row(u64 N) {
    std::vector<u64> out(N + 1);
    u64 odd = 1;
    int val = 0;
    out[0] = 1;
    for (u64 i = 1; i <= N; ++i) {
        u64 num = N - i + 1;
        u64 den = i;
        int vn = std::countr_zero(num);
        int vd = std::countr_zero(den);
        val += vn - vd;
        odd *= num >> vn;
        odd *= ff::inverse_mod_pow2(den >> vd, 64);
        out[i] = val >= 64 ? 0 : odd << val;
    }
    return out;
}

void mask_all(Coeffs& p, u64 mask) {
    for (auto& c : p) c &= mask;
}

}  // namespace

const char* to_string(Presentation p) {
    switch (p) {
        case Presentation::full: return "full";
        case Presentation::divided: return "divided";
        case Presentation::custom: return "custom";
    }
    return "?";
}

RingSpec::RingSpec(int n, int d, Presentation p, Coeffs relation)
    : n_(n), d_(d), presentation_(p), relation_(std::move(relation)) {
    if (d < 1 || d > 63) throw std::invalid_argument("RingSpec: precision must be in [1, 63]");
    mask_all(relation_, mask());
    if (relation_.empty() || relation_.back() != 1) throw std::invalid_argument("RingSpec: relation must be monic");
}

RingSpec RingSpec::full(int n, int d) {
    if (n < 0 || n > 20) throw std::invalid_argument("RingSpec::full: level out of range");
    Coeffs rel = binomial_row(u64{1} << n);
    rel[0] = 0;
    return RingSpec(n, d, Presentation::full, std::move(rel));
}

RingSpec RingSpec::divided(int n, int d) {
    if (n < 0 || n > 20) throw std::invalid_argument("RingSpec::divided: level out of range");
    Coeffs row = binomial_row(u64{1} << n);
    Coeffs rel(row.begin() + 1, row.end());
    return RingSpec(n, d, Presentation::divided, std::move(rel));
}

RingSpec RingSpec::custom(const std::vector<u64>& low_coeffs, int d) {
    Coeffs rel = low_coeffs;
    rel.push_back(1);
    return RingSpec(-1, d, Presentation::custom, std::move(rel));
}

Coeffs RingSpec::constant(u64 c) const {
    Coeffs p = zero();
    if (!p.empty()) p[0] = c & mask();
    return p;
}

Coeffs RingSpec::monomial(int deg) const {
    Coeffs p(static_cast<std::size_t>(std::max(deg + 1, rank())), 0);
    p[static_cast<std::size_t>(deg)] = 1;
    return reduce(std::move(p));
}

Coeffs RingSpec::reduce(Coeffs p) const {
    const int R = rank();
    for (int i = static_cast<int>(p.size()) - 1; i >= R; --i) {
        const u64 c = p[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        for (int t = 0; t < R; ++t) p[static_cast<std::size_t>(i - R + t)] -= c * relation_[static_cast<std::size_t>(t)];
        p[static_cast<std::size_t>(i)] = 0;
    }
    p.resize(static_cast<std::size_t>(R), 0);
    mask_all(p, mask());
    return p;
}

Coeffs x_to_t(Coeffs p, int bits) {
    const std::size_t R = p.size();
    for (std::size_t i = 0; i + 1 < R; ++i) {
        for (std::size_t j = R - 1; j-- > i;) p[j] += p[j + 1];
    }
    if (bits < 64) mask_all(p, (u64{1} << bits) - 1);
    return p;
}

Coeffs t_to_x(Coeffs p, int bits) {
    const std::size_t R = p.size();
    for (std::size_t i = R; i-- > 0;) {
        for (std::size_t j = i; j + 1 < R; ++j) p[j] -= p[j + 1];
    }
    if (bits < 64) mask_all(p, (u64{1} << bits) - 1);
    return p;
}

Coeffs add(const Coeffs& a, const Coeffs& b, const RingSpec& spec) {
    Coeffs out = spec.zero();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = ((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0)) & spec.mask();
    }
    return out;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, const RingSpec& spec) {
    Coeffs out = spec.zero();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = ((i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0)) & spec.mask();
    }
    return out;
}

Coeffs scale(const Coeffs& a, u64 s, const RingSpec& spec) {
    Coeffs out = a;
    for (auto& c : out) c = (c * s) & spec.mask();
    out.resize(static_cast<std::size_t>(spec.rank()), 0);
    return out;
}

Coeffs poly_mul_mod(const Coeffs& a, const Coeffs& b, const RingSpec& spec) {
    const int da = degree(a);
    const int db = degree(b);
    if (da < 0 || db < 0) return spec.zero();
    Coeffs prod(static_cast<std::size_t>(da + db + 1), 0);
    for (int i = 0; i <= da; ++i) {
        const u64 ai = a[static_cast<std::size_t>(i)];
        if (ai == 0) continue;
        u64* dst = prod.data() + i;
        for (int j = 0; j <= db; ++j) dst[j] += ai * b[static_cast<std::size_t>(j)];
    }
    return spec.reduce(std::move(prod));
}

Coeffs divide_by_aug(const Coeffs& p, const RingSpec& spec) {
    Coeffs q = spec.reduce(p);
    if (!q.empty() && q[0] != 0) {
        throw std::invalid_argument("divide_by_aug: element is not in the augmentation ideal");
    }
    if (!q.empty()) {
        q.erase(q.begin());
        q.push_back(0);
    }
    return q;
}

Coeffs norm_element(int m, const RingSpec& spec) {
    if (m < 0 || m > 24) throw std::invalid_argument("norm_element: level out of range");
    Coeffs row = binomial_row(u64{1} << m);
    return spec.reduce(Coeffs(row.begin() + 1, row.end()));
}

bool is_zero(const Coeffs& p) {
    return std::all_of(p.begin(), p.end(), [](u64 c) { return c == 0; });
}

int degree(const Coeffs& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[static_cast<std::size_t>(i)] != 0) return i;
    }
    return -1;
}

std::string format_poly(const Coeffs& p) {
    std::string out;
    for (int i = degree(p); i >= 0; --i) {
        const u64 c = p[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (c != 1 || i == 0) out += std::to_string(c);
        if (i >= 1) out += "T";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// HowellIdeal

HowellIdeal::HowellIdeal(RingSpec spec) : spec_(std::move(spec)) {}

int HowellIdeal::governing_row(int column) const {
    int best = -1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].degree <= column) best = static_cast<int>(i);
    }
    return best;
}

void HowellIdeal::reduce_in_place(Coeffs& p, int from_column) const {
    const u64 mask = spec_.mask();
    int g = static_cast<int>(rows_.size()) - 1;
    for (int c = from_column; c >= 0; --c) {
        while (g >= 0 && rows_[static_cast<std::size_t>(g)].degree > c) --g;
        if (g < 0) break;
        const Row& row = rows_[static_cast<std::size_t>(g)];
        u64& lead = p[static_cast<std::size_t>(c)];
        const u64 q = (lead & mask) >> row.exponent;
        if (q == 0) continue;
        const int shift = c - row.degree;
        for (int t = 0; t <= row.degree; ++t) {
            u64& dst = p[static_cast<std::size_t>(shift + t)];
            dst = (dst - q * row.coeffs[static_cast<std::size_t>(t)]) & mask;
        }
    }
}

Coeffs HowellIdeal::normal_form(Coeffs p) const {
    p = spec_.reduce(std::move(p));
    reduce_in_place(p, spec_.rank() - 1);
    return p;
}

bool HowellIdeal::contains(const Coeffs& p) const { return is_zero(normal_form(p)); }

bool HowellIdeal::contains_lifted(const Coeffs& p) const { return contains(p); }

bool HowellIdeal::insert(const Coeffs& g) {
    const int d = spec_.d();
    const int R = spec_.rank();
    const u64 mask = spec_.mask();
    bool grew = false;
    std::vector<Coeffs> work{g};

    auto padded = [&](const Row& row) {
        Coeffs p = row.coeffs;
        p.resize(static_cast<std::size_t>(R), 0);
        return p;
    };
    // T^s * row, s >= 0, reduced into the ring
    auto shifted = [&](const Row& row, int s) {
        Coeffs p(static_cast<std::size_t>(std::max(R, row.degree + s + 1)), 0);
        for (int t = 0; t <= row.degree; ++t) p[static_cast<std::size_t>(t + s)] = row.coeffs[static_cast<std::size_t>(t)];
        return spec_.reduce(std::move(p));
    };

    while (!work.empty()) {
        Coeffs w = normal_form(std::move(work.back()));
        work.pop_back();
        const int j = degree(w);
        if (j < 0) continue;
        grew = true;

        const u64 lead = w[static_cast<std::size_t>(j)];
        const int v = std::countr_zero(lead);
        const u64 unit_inv = ff::inverse_mod_pow2(lead >> v, d);
        Row row;
        row.degree = j;
        row.exponent = v;
        row.coeffs.assign(w.begin(), w.begin() + j + 1);
        for (auto& c : row.coeffs) c = (c * unit_inv) & mask;

        // Rows the new one dominates are re-queued; their content is still in
        // the ideal and reduces against the new row.
        std::vector<Row> kept;
        for (auto& old : rows_) {
            if (old.degree >= j && old.exponent >= v) {
                work.push_back(padded(old));
            } else {
                kept.push_back(std::move(old));
            }
        }
        rows_ = std::move(kept);

        // annihilator of the leading coefficient
        if (v > 0) work.push_back(scale(padded(row), u64{1} << (d - v), spec_));
        // wrap-around through the relation
        work.push_back(shifted(row, R - j));
        // S-pairs
        for (const Row& other : rows_) {
            Coeffs s;
            if (other.degree < j) {
                // other.exponent > v
                s = sub(shifted(other, j - other.degree),
                        scale(padded(row), u64{1} << (other.exponent - v), spec_), spec_);
            } else {
                // other.exponent < v
                s = sub(shifted(row, other.degree - j),
                        scale(padded(other), u64{1} << (v - other.exponent), spec_), spec_);
            }
            work.push_back(std::move(s));
        }

        auto pos = std::find_if(rows_.begin(), rows_.end(), [&](const Row& r) { return r.degree > j; });
        rows_.insert(pos, std::move(row));
    }
    if (grew) canonicalize();
    return grew;
}

HowellIdeal HowellIdeal::inserted(const Coeffs& g) const {
    HowellIdeal copy = *this;
    copy.insert(g);
    return copy;
}

void HowellIdeal::canonicalize() {
    // Rows are processed in ascending degree, so each tail reduction only
    // uses rows that are already canonical.
    const int R = spec_.rank();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Row& row = rows_[i];
        Coeffs p = row.coeffs;
        p.resize(static_cast<std::size_t>(R), 0);
        const Row saved = row;
        // reduce_in_place must not see this row or later ones
        std::vector<Row> tail(rows_.begin() + static_cast<std::ptrdiff_t>(i), rows_.end());
        rows_.resize(i);
        reduce_in_place(p, saved.degree - 1);
        rows_.insert(rows_.end(), tail.begin(), tail.end());
        rows_[i].coeffs.assign(p.begin(), p.begin() + saved.degree + 1);
    }
}

std::vector<int> HowellIdeal::pivot_exponents() const {
    std::vector<int> a(static_cast<std::size_t>(spec_.rank()), spec_.d());
    for (int c = 0; c < spec_.rank(); ++c) {
        const int g = governing_row(c);
        if (g >= 0) a[static_cast<std::size_t>(c)] = rows_[static_cast<std::size_t>(g)].exponent;
    }
    return a;
}

int HowellIdeal::index_log2() const {
    int total = 0;
    for (int a : pivot_exponents()) total += a;
    return total;
}

std::vector<HowellIdeal::Row> HowellIdeal::howell_rows() const {
    std::vector<Row> out;
    const int R = spec_.rank();
    for (int c = 0; c < R; ++c) {
        const int g = governing_row(c);
        if (g < 0) continue;
        const Row& base = rows_[static_cast<std::size_t>(g)];
        Coeffs p(static_cast<std::size_t>(R), 0);
        for (int t = 0; t <= base.degree; ++t) {
            p[static_cast<std::size_t>(c - base.degree + t)] = base.coeffs[static_cast<std::size_t>(t)];
        }
        reduce_in_place(p, c - 1);
        out.push_back({c, base.exponent, Coeffs(p.begin(), p.begin() + c + 1)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reported generators

std::string ReportedIdeal::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) out += ", ";
        out += format_poly(generators[i]);
    }
    return out + ")";
}

HowellIdeal ideal_from_generators(const RingSpec& spec, const std::vector<Coeffs>& gens) {
    HowellIdeal ideal(spec);
    for (const auto& g : gens) ideal.insert(spec.reduce(g));
    return ideal;
}

ReportedIdeal canonical_generators(const HowellIdeal& ideal) {
    const RingSpec& spec = ideal.spec();
    const int d = spec.d();
    const int R = spec.rank();
    ReportedIdeal out;
    out.presentation = spec.presentation();
    out.d = d;
    out.log2_index = ideal.index_log2();

    const auto a = ideal.pivot_exponents();
    if (R == 0 || a[0] == d) out.generators.push_back(Coeffs{u64{1} << d});
    for (const auto& row : ideal.basis()) out.generators.push_back(row.coeffs);
    if (R > 0 && a[static_cast<std::size_t>(R - 1)] > 0) {
        // the relation, tail-reduced against the ideal
        Coeffs rel = spec.relation();
        Coeffs low(rel.begin(), rel.end() - 1);
        low = ideal.normal_form(std::move(low));
        low.push_back(1);
        out.generators.push_back(std::move(low));
    }

    if (!(ideal_from_generators(spec, out.generators) == ideal)) {
        throw std::logic_error("canonical_generators: generators do not regenerate the ideal");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

Coeffs parse_poly(const std::string& text) {
    Coeffs out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&](u64& value) {
        std::size_t start = i;
        value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + static_cast<u64>(text[i] - '0');
            ++i;
        }
        return i > start;
    };
    bool any = false;
    skip_ws();
    while (i < text.size()) {
        bool negative = false;
        if (any) {
            if (text[i] != '+' && text[i] != '-') throw std::invalid_argument("parse_poly: expected + or - in '" + text + "'");
            negative = text[i] == '-';
            ++i;
            skip_ws();
        } else if (text[i] == '-') {
            negative = true;
            ++i;
            skip_ws();
        }
        u64 coeff = 1;
        u64 digits = 0;
        const bool has_coeff = read_int(digits);
        if (has_coeff) coeff = digits;
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        std::size_t power = 0;
        if (i < text.size() && (text[i] == 'T' || text[i] == 't')) {
            ++i;
            power = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                u64 e = 0;
                if (!read_int(e)) throw std::invalid_argument("parse_poly: missing exponent in '" + text + "'");
                power = static_cast<std::size_t>(e);
            }
        } else if (!has_coeff) {
            throw std::invalid_argument("parse_poly: cannot parse '" + text + "'");
        }
        if (out.size() <= power) out.resize(power + 1, 0);
        out[power] += negative ? (~coeff + 1) : coeff;
        any = true;
        skip_ws();
    }
    if (!any) throw std::invalid_argument("parse_poly: empty polynomial");
    return out;
}

std::vector<Coeffs> parse_ideal(const std::string& text) {
    std::string body = text;
    auto open = body.find('(');
    auto close = body.rfind(')');
    if (open != std::string::npos && close != std::string::npos && close > open) {
        body = body.substr(open + 1, close - open - 1);
    }
    std::vector<Coeffs> gens;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (piece.find_first_not_of(" \t") != std::string::npos) gens.push_back(parse_poly(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return gens;
}

}  // namespace greenberg::ring
