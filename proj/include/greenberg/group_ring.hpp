#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace greenberg::ring {

using u64 = std::uint64_t;

/// Coefficients in the T-basis (entry j multiplies T^j), least nonnegative
/// residues modulo 2^d.
using Coeffs = std::vector<u64>;

enum class Presentation { full, divided, custom };

const char* to_string(Presentation p);

/// Z/2^d[T]/(relation) for a monic relation of degree `rank`.
///   full:    (T+1)^{2^n} - 1            -- the group ring Z/2^d[G_n]
///   divided: ((T+1)^{2^n} - 1) / T      -- the augmentation ideal divided by T
class RingSpec {
public:
    static RingSpec full(int n, int d);
    static RingSpec divided(int n, int d);
    /// Arbitrary monic relation, given low coefficient first without the
    /// leading 1. Used by tests.
    static RingSpec custom(const std::vector<u64>& low_coeffs, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    int rank() const { return static_cast<int>(relation_.size()) - 1; }
    Presentation presentation() const { return presentation_; }
    u64 modulus() const { return u64{1} << d_; }
    u64 mask() const { return modulus() - 1; }
    /// Monic, size rank + 1, coefficients mod 2^d.
    const Coeffs& relation() const { return relation_; }

    Coeffs zero() const { return Coeffs(static_cast<std::size_t>(rank()), 0); }
    Coeffs constant(u64 c) const;
    Coeffs monomial(int degree) const;

    /// Reduces a polynomial of any length mod 2^d and the relation. The input
    /// may hold two's-complement wrapped values; only their residues mod 2^d
    /// matter.
    Coeffs reduce(Coeffs p) const;

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.d_ == b.d_ && a.relation_ == b.relation_;
    }

private:
    RingSpec(int n, int d, Presentation p, Coeffs relation);
    int n_;
    int d_;
    Presentation presentation_;
    Coeffs relation_;
};

/// p(X) -> p(T + 1): X-basis coefficients to T-basis, mod 2^bits.
Coeffs x_to_t(Coeffs p, int bits);
/// Inverse of x_to_t.
Coeffs t_to_x(Coeffs p, int bits);

Coeffs add(const Coeffs& a, const Coeffs& b, const RingSpec& spec);
Coeffs sub(const Coeffs& a, const Coeffs& b, const RingSpec& spec);
Coeffs scale(const Coeffs& a, u64 s, const RingSpec& spec);
/// Schoolbook product followed by division by the monic relation.
Coeffs poly_mul_mod(const Coeffs& a, const Coeffs& b, const RingSpec& spec);

/// Canonical q with T*q = p for p in the augmentation ideal (constant term
/// 0 mod 2^d): shift the integer lift down by one. Throws
/// std::invalid_argument when the constant term is nonzero.
Coeffs divide_by_aug(const Coeffs& p, const RingSpec& spec);

/// sum_{i < 2^m} (T+1)^i, reduced into spec.
Coeffs norm_element(int m, const RingSpec& spec);

bool is_zero(const Coeffs& p);
/// Highest index with a nonzero entry, or -1.
int degree(const Coeffs& p);
/// Human-readable polynomial in T, highest degree first ("T^2 + 2T + 6").
std::string format_poly(const Coeffs& p);

/// An ideal of Z/2^d[T]/(relation).
///
/// Stored as its reduced strong generating set: one row per degree at which
/// the pivot exponent drops. Row j has leading term 2^e T^j and every lower
/// coefficient reduced modulo the pivot of its column. The full Howell form
/// has a pivot row in every column c, namely T^{c - j} times the row
/// governing c, tail-reduced; howell_rows() materializes it.
class HowellIdeal {
public:
    struct Row {
        int degree = 0;
        int exponent = 0;  // leading coefficient is 2^exponent
        Coeffs coeffs;
        friend bool operator==(const Row&, const Row&) = default;
    };

    explicit HowellIdeal(RingSpec spec);

    const RingSpec& spec() const { return spec_; }
    const std::vector<Row>& basis() const { return rows_; }

    /// Adds g and everything it generates. Returns true when the ideal grew.
    bool insert(const Coeffs& g);
    HowellIdeal inserted(const Coeffs& g) const;

    bool contains(const Coeffs& p) const;
    /// Membership of an element of Z/2^d[T] of any degree (reduced first).
    bool contains_lifted(const Coeffs& p) const;

    /// Normal form modulo the ideal: every coefficient in column c lies in
    /// [0, 2^{a_c}).
    Coeffs normal_form(Coeffs p) const;

    /// a_c for every column c: the pivot exponent, d when the column has none.
    std::vector<int> pivot_exponents() const;
    /// log2 of the index of the ideal in the ring.
    int index_log2() const;

    /// Materialized Howell form, pivots in increasing column order.
    std::vector<Row> howell_rows() const;

    friend bool operator==(const HowellIdeal& a, const HowellIdeal& b) {
        return a.spec_ == b.spec_ && a.rows_ == b.rows_;
    }

private:
    // index of the row governing column c, or -1
    int governing_row(int column) const;
    void reduce_in_place(Coeffs& p, int from_column) const;
    void canonicalize();

    RingSpec spec_;
    std::vector<Row> rows_;  // ascending degree, strictly descending exponent
};

/// The ideal of Z_2[T] obtained by lifting a HowellIdeal (adding 2^d and the
/// relation), given by a minimal list of generators.
struct ReportedIdeal {
    std::vector<Coeffs> generators;  // integer coefficients, ascending pivot degree
    int log2_index = 0;
    Presentation presentation = Presentation::full;
    int d = 0;

    std::string to_string() const;
};

/// Generators sorted by pivot degree, keeping each row at which the pivot
/// exponent strictly drops (2^d and the reduced relation included when they
/// are needed). Verifies that the list regenerates the ideal. Throws
/// std::logic_error if the round trip fails.
ReportedIdeal canonical_generators(const HowellIdeal& ideal);

/// The ideal of spec generated by the given integer polynomials.
HowellIdeal ideal_from_generators(const RingSpec& spec, const std::vector<Coeffs>& gens);

/// Parses "(4, 2T, T^2 + 2)" style ideal notation into generator polynomials.
std::vector<Coeffs> parse_ideal(const std::string& text);
/// Parses a single polynomial such as "T^3 + 2T + 4".
Coeffs parse_poly(const std::string& text);

}  // namespace greenberg::ring
