#include "greenberg/quadratic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace greenberg::quad {

namespace {

u64 isqrt(u64 x) {
    u64 s = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(x)));
    while (s * s > x) --s;
    while ((s + 1) * (s + 1) <= x) ++s;
    return s;
}

int jacobi(i64 a, i64 m) {
    // m odd and positive
    a %= m;
    if (a < 0) a += m;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = m & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, m);
        if ((a & 3) == 3 && (m & 3) == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

void require_radicand(u64 f, const char* who) {
    if (auto why = radicand_problem(f)) throw std::invalid_argument(std::string(who) + ": " + *why);
}

}  // namespace

int kronecker(i64 D, u64 a) {
    if (a == 0) return (D == 1 || D == -1) ? 1 : 0;
    int result = 1;
    int v = std::countr_zero(a);
    if (v > 0) {
        if ((D & 1) == 0) return 0;
        i64 r = ((D % 8) + 8) % 8;
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
        a >>= v;
    }
    if (a == 1) return result;
    return result * jacobi(D, static_cast<i64>(a));
}

bool is_squarefree(u64 m) {
    if (m == 0) return false;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return false;
    }
    return true;
}

std::optional<std::string> radicand_problem(u64 f) {
    if (f < 3) {
        return "f = " + std::to_string(f) +
               " is excluded: need f >= 3 (for f = 2 the Z2-extension is that of Q itself)";
    }
    if (!is_squarefree(f) || (f & 1) == 0) {
        // reduce to the odd squarefree part
        u64 core = 1;
        u64 m = f;
        for (u64 p = 2; p * p <= m; ++p) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (e & 1) core *= p;
        }
        core *= m;
        std::string msg = "f = " + std::to_string(f) + " is not an odd squarefree integer";
        if ((core & 1) == 0) core /= 2;
        if (core >= 3) {
            msg += "; Q(sqrt f) has the same cyclotomic Z2-extension (from level 1 on) as Q(sqrt " +
                   std::to_string(core) + "), run with f = " + std::to_string(core);
        } else {
            msg += "; its squarefree odd part is " + std::to_string(core) +
                   ", which gives no real quadratic field to check";
        }
        return msg;
    }
    return std::nullopt;
}

bool KernelSet::contains(u64 a) const {
    return std::binary_search(residues.begin(), residues.end(), a % f);
}

KernelSet character_kernel(u64 f) {
    require_radicand(f, "character_kernel");
    KernelSet out;
    out.f = f;
    out.sign_case = (f % 4 == 1) ? SignCase::chi_f : SignCase::chi_minus_f;
    const i64 D = out.sign_case == SignCase::chi_f ? static_cast<i64>(f) : -static_cast<i64>(f);
    for (u64 a = 1; a < f; ++a) {
        if (std::gcd(a, f) == 1 && kronecker(D, a) == 1) out.residues.push_back(a);
    }
    return out;
}

const char* to_string(Gate g) {
    switch (g) {
        case Gate::run_split: return "run_split";
        case Gate::run_nonsplit: return "run_nonsplit";
        case Gate::trivially_stable: return "trivially_stable";
        case Gate::excluded: return "excluded";
    }
    return "?";
}

u64 fundamental_discriminant(u64 f) { return f % 4 == 1 ? f : 4 * f; }

u64 count_form_cycles(u64 D) {
    using Form = std::tuple<i64, i64, i64>;
    const i64 d = static_cast<i64>(D);
    const i64 s = static_cast<i64>(isqrt(D));
    if (s * s == d) throw std::invalid_argument("count_form_cycles: square discriminant");

    std::vector<Form> forms;
    for (i64 b = 1; b <= s; ++b) {
        if (((b * b - d) & 3) != 0) continue;
        const i64 N = (d - b * b) / 4;  // -a*c > 0
        for (i64 A = 1; A <= N; ++A) {
            if (N % A != 0) continue;
            const i64 C = N / A;
            // |sqrt D - 2A| < b
            if ((b + 2 * A) * (b + 2 * A) <= d) continue;
            if (2 * A > b && (2 * A - b) * (2 * A - b) >= d) continue;
            if (std::gcd(std::gcd(A, b), C) != 1) continue;
            forms.emplace_back(A, b, -C);
            forms.emplace_back(-A, b, C);
        }
    }
    std::sort(forms.begin(), forms.end());
    std::map<Form, std::size_t> index;
    for (std::size_t i = 0; i < forms.size(); ++i) index[forms[i]] = i;

    auto rho = [&](const Form& fm) -> Form {
        auto [a, b, c] = fm;
        const i64 ac = c < 0 ? -c : c;
        const i64 m = 2 * ac;
        i64 nb;
        if (ac < s + 1) {
            // largest value < sqrt D congruent to -b mod 2|c|
            nb = s - (((s + b) % m) + m) % m;
        } else {
            nb = (((-b) % m) + m) % m;
            if (nb > ac) nb -= m;
        }
        return {c, nb, (nb * nb - d) / (4 * c)};
    };

    std::vector<bool> seen(forms.size(), false);
    u64 cycles = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            auto it = index.find(rho(forms[j]));
            if (it == index.end()) throw std::logic_error("count_form_cycles: rho left the reduced set");
            j = it->second;
        }
    }
    return cycles;
}

u64 continued_fraction_period(u64 f) {
    const i64 d = static_cast<i64>(f);
    const i64 s = static_cast<i64>(isqrt(f));
    if (s * s == d) throw std::invalid_argument("continued_fraction_period: square radicand");
    i64 P = (f % 4 == 1) ? 1 : 0;
    i64 Q = (f % 4 == 1) ? 2 : 1;
    auto step = [&] {
        const i64 a = (P + s) / Q;
        P = a * Q - P;
        Q = (d - P * P) / Q;
    };
    step();
    const i64 P1 = P, Q1 = Q;
    u64 period = 0;
    do {
        step();
        ++period;
    } while (P != P1 || Q != Q1);
    return period;
}

QuadFieldInfo class_number(u64 f) {
    require_radicand(f, "class_number");
    QuadFieldInfo info;
    info.f = f;
    info.discriminant = fundamental_discriminant(f);
    info.h_narrow = count_form_cycles(info.discriminant);
    info.unit_norm = (continued_fraction_period(f) & 1) ? -1 : 1;
    info.h = info.unit_norm == -1 ? info.h_narrow : info.h_narrow / 2;
    const int v = std::countr_zero(info.h);
    if (f % 4 == 1) {
        info.m0 = v;
    } else {
        info.m0 = v >= 1 ? v - 1 : 0;  // only consumed when h is even
    }
    info.split8 = f % 8 == 1;
    info.gate = classify_gate(info);
    return info;
}

Gate classify_gate(const QuadFieldInfo& info) {
    if (radicand_problem(info.f)) return Gate::excluded;
    if (info.f % 8 == 1) return Gate::run_split;
    return info.h % 2 == 0 ? Gate::run_nonsplit : Gate::trivially_stable;
}

QuadFieldInfo describe_field(u64 f) {
    if (radicand_problem(f)) {
        QuadFieldInfo info;
        info.f = f;
        info.gate = Gate::excluded;
        return info;
    }
    return class_number(f);
}

}  // namespace greenberg::quad
