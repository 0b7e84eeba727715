#include "qs/real_quadratic.hpp"

#include "qs/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qs {

namespace {

using i128 = __int128;

i64 abs64(i64 x) { return x < 0 ? -x : x; }

void require_real(const QuadDiscriminant& D) {
    if (D.imaginary()) throw DomainError("expected a positive discriminant, got " + std::to_string(D.value()));
}

// floor((P + sqrt(D)) / Q) for nonsquare D and Q != 0.
i64 floor_quotient(i64 P, i64 Q, i64 s) {
    if (Q > 0) return floor_div(P + s, Q);
    return -(floor_div(P + s, -Q) + 1);
}

struct Expansion {
    i64 a0 = 0;
    std::vector<i64> period;
};

// (P + sqrt(D)) / Q with Q | D - P^2; the tail after a0 is purely periodic for the
// inputs used here (sqrt(d) and (1 + sqrt(d)) / 2).
Expansion expand(u64 D, i64 P, i64 Q) {
    const i64 s = static_cast<i64>(isqrt(D));
    const i64 Dv = static_cast<i64>(D);
    Expansion e;
    e.a0 = floor_quotient(P, Q, s);
    P = e.a0 * Q - P;
    Q = static_cast<i64>((static_cast<i128>(Dv) - static_cast<i128>(P) * P) / Q);
    const i64 P1 = P, Q1 = Q;
    do {
        const i64 a = floor_quotient(P, Q, s);
        e.period.push_back(a);
        P = a * Q - P;
        Q = static_cast<i64>((static_cast<i128>(Dv) - static_cast<i128>(P) * P) / Q);
    } while (P != P1 || Q != Q1);
    return e;
}

// Convergent p/q of [a0; period[0], ..., period[r-2]], i.e. index r - 1.
std::pair<BigInt, BigInt> last_convergent(const Expansion& e) {
    BigInt p_prev = 1, p = e.a0;
    BigInt q_prev = 0, q = 1;
    for (std::size_t i = 0; i + 1 < e.period.size(); ++i) {
        const BigInt a = e.period[i];
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
    }
    return {p, q};
}

int sign_of(const BigInt& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

void require_nonsquare(u64 d) {
    if (d < 2 || is_square(d)) throw DomainError(std::to_string(d) + " must be a non-square integer >= 2");
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

} // namespace

bool is_reduced_real(const Form& f) {
    const i64 D = f.discriminant();
    if (D <= 0 || is_square(static_cast<u64>(D))) return false;
    const i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
    const i64 two_a = 2 * abs64(f.a);
    // With D nonsquare: b < sqrt D <=> b <= s, and x > sqrt D - b <=> x + b > s.
    return f.b > 0 && f.b <= s && two_a + f.b > s && two_a - f.b <= s;
}

std::vector<Form> reduced_forms_real(const QuadDiscriminant& D) {
    require_real(D);
    const i64 Dv = D.value();
    const i64 s = static_cast<i64>(isqrt(D.magnitude()));
    std::vector<Form> out;
    for (i64 b = (Dv % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        const i64 n = (Dv - b * b) / 4; // a * c = -n
        // 2|a| < sqrt(D) + b < 2 sqrt(D) bounds |a| by s.
        for (i64 m = 1; m <= s && m <= n; ++m) {
            if (n % m != 0) continue;
            if (!(2 * m + b > s && 2 * m - b <= s)) continue;
            for (const Form f : {Form{m, b, -n / m}, Form{-m, b, n / m}})
                if (f.primitive()) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Form rho(const Form& f) {
    const i64 D = f.discriminant();
    const i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
    const i64 two_c = 2 * abs64(f.c);
    // Largest b' <= s with b' = -b (mod 2|c|).
    const i64 b = s - mod_floor(s + f.b, two_c);
    const i64 a_next = static_cast<i64>((static_cast<i128>(b) * b - D) / (4 * static_cast<i128>(f.c)));
    return {f.c, b, a_next};
}

std::vector<std::vector<Form>> real_cycles(const QuadDiscriminant& D) {
    const std::vector<Form> forms = reduced_forms_real(D);
    std::map<Form, bool> seen;
    for (const Form& f : forms) seen.emplace(f, false);
    std::vector<std::vector<Form>> cycles;
    for (const Form& start : forms) {
        if (seen.at(start)) continue;
        std::vector<Form> cycle;
        Form f = start;
        do {
            auto it = seen.find(f);
            if (it == seen.end())
                throw InvariantViolation("rho left the set of reduced forms at " + f.to_string());
            it->second = true;
            cycle.push_back(f);
            f = rho(f);
        } while (f != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

u64 narrow_class_number(const QuadDiscriminant& D) { return real_cycles(D).size(); }

u64 class_number_real(const QuadDiscriminant& D) {
    require_real(D);
    if (!is_fundamental_discriminant(D.value()))
        throw DomainError(std::to_string(D.value()) + " is not a fundamental discriminant");
    const auto cycles = real_cycles(D);
    std::map<Form, std::size_t> cycle_of;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (const Form& f : cycles[i]) cycle_of.emplace(f, i);
    DisjointSets sets(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const Form& f = cycles[i].front();
        sets.unite(i, cycle_of.at(Form{-f.a, f.b, -f.c}));
    }
    u64 classes = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (sets.find(i) == i) ++classes;
    return classes;
}

PellSolution pell_unit(u64 d) {
    require_nonsquare(d);
    const auto [p, q] = last_convergent(expand(d, 0, 1));
    PellSolution sol{d, p, q, 0, 1};
    sol.norm_sign = sign_of(p * p - BigInt(d) * q * q);
    return sol;
}

PellSolution fundamental_unit(u64 d) {
    require_nonsquare(d);
    if (d % 4 != 1) return pell_unit(d);
    // epsilon = p - q * conj(omega) with omega = (1 + sqrt d) / 2, i.e. ((2p - q) + q sqrt d) / 2.
    const auto [p, q] = last_convergent(expand(d, 1, 2));
    PellSolution sol{d, 2 * p - q, q, 0, 2};
    if (sol.t % 2 == 0 && sol.u % 2 == 0) {
        sol.t /= 2;
        sol.u /= 2;
        sol.denominator = 1;
    }
    sol.norm_sign = sign_of(sol.t * sol.t - BigInt(d) * sol.u * sol.u);
    return sol;
}

std::vector<i64> cf_period(u64 D, i64 P, i64 Q) {
    if (Q == 0) throw DomainError("continued fraction denominator must be nonzero");
    if ((static_cast<i128>(D) - static_cast<i128>(P) * P) % Q != 0)
        throw DomainError("Q must divide D - P^2");
    require_nonsquare(D);
    return expand(D, P, Q).period;
}

} // namespace qs
