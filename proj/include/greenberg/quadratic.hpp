#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace greenberg::quad {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Kronecker symbol (D | a) for a >= 1.
int kronecker(i64 D, u64 a);

bool is_squarefree(u64 m);

/// Empty when f is an admissible radicand (odd, squarefree, >= 3);
/// otherwise a human-readable reason including how to reduce f.
std::optional<std::string> radicand_problem(u64 f);

enum class SignCase { chi_f, chi_minus_f };

/// The kernel of chi_f (f = 1 mod 4) or chi_{-f} (f = 3 mod 4) in (Z/f)^x.
struct KernelSet {
    u64 f = 0;
    SignCase sign_case = SignCase::chi_f;
    std::vector<u64> residues;  // ascending

    bool contains(u64 a) const;
};

/// Throws std::invalid_argument unless f is odd, squarefree and >= 3.
KernelSet character_kernel(u64 f);

enum class Gate { run_split, run_nonsplit, trivially_stable, excluded };

const char* to_string(Gate g);

struct QuadFieldInfo {
    u64 f = 0;
    u64 discriminant = 0;
    u64 h = 0;
    u64 h_narrow = 0;
    int unit_norm = 0;  // norm of the fundamental unit, +1 or -1
    int m0 = 0;         // 2-adic valuation of #A_0
    bool split8 = false;
    Gate gate = Gate::excluded;
};

/// Fundamental discriminant of Q(sqrt f) for odd squarefree f.
u64 fundamental_discriminant(u64 f);

/// Number of rho-cycles of primitive reduced indefinite forms of
/// discriminant D, i.e. the narrow class number.
u64 count_form_cycles(u64 D);

/// Period length of the continued fraction of the maximal-order generator
/// sqrt(f) (f = 3 mod 4) or (1 + sqrt f)/2 (f = 1 mod 4).
u64 continued_fraction_period(u64 f);

/// Class number, fundamental-unit norm, m0 and gate for Q(sqrt f).
/// Throws std::invalid_argument unless f is odd, squarefree and >= 3.
QuadFieldInfo class_number(u64 f);

/// Gate classification; admissibility of f is re-checked here.
Gate classify_gate(const QuadFieldInfo& info);

/// Info for any f: excluded radicands come back with gate = excluded and
/// no class number.
QuadFieldInfo describe_field(u64 f);

}  // namespace greenberg::quad
