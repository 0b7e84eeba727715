#include "qs/arith.hpp"

#include "qs/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace qs {

namespace {

using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Trial division visitor: calls on_prime(p, e) in increasing order of p. A false
// return from on_prime stops the walk early.
template <typename F>
void trial_divide(u64 n, F&& on_prime) {
    if (n % 2 == 0) {
        unsigned e = 0;
        while (n % 2 == 0) { n /= 2; ++e; }
        if (!on_prime(u64{2}, e)) return;
    }
    for (u64 p = 3; p <= n / p; p += 2) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (!on_prime(p, e)) return;
    }
    if (n > 1) on_prime(n, 1u);
}

template <typename F>
void spf_divide(u64 n, const SpfTable& table, F&& on_prime) {
    while (n > 1) {
        const u64 p = table.spf(n);
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (!on_prime(p, e)) return;
    }
}

template <typename F>
void walk_factors(u64 n, const SpfTable* table, F&& on_prime) {
    if (table != nullptr && table->covers(n))
        spf_divide(n, *table, on_prime);
    else
        trial_divide(n, on_prime);
}

void require_positive(u64 n) {
    if (n == 0) throw DomainError("factorization of 0 is undefined");
}

} // namespace

bool Factorization::squarefree() const {
    for (const auto& f : factors)
        if (f.exponent > 1) return false;
    return true;
}

std::string Factorization::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out << " * ";
        out << factors[i].prime;
        if (factors[i].exponent > 1) out << '^' << factors[i].exponent;
    }
    return out.str();
}

SpfTable::SpfTable(u64 limit, u64 max_entries) : limit_(limit) {
    if (limit < 2) throw DomainError("sieve limit must be at least 2");
    if (limit > max_entries || limit >= (u64{1} << 32))
        throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds the table cap of " +
                            std::to_string(max_entries) + " entries");
    spf_.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        if (i > limit / i) continue;
        for (u64 j = i * i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
}

SpfTable build_spf(u64 limit, u64 max_entries) { return SpfTable(limit, max_entries); }

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && (r > n / r)) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

bool is_square(u64 n) {
    const u64 r = isqrt(n);
    return r * r == n;
}

Factorization factor(u64 n, const SpfTable* table) {
    require_positive(n);
    Factorization f;
    f.n = n;
    walk_factors(n, table, [&](u64 p, unsigned e) {
        f.factors.push_back({p, e});
        return true;
    });
    return f;
}

unsigned omega(u64 n, const SpfTable* table) {
    require_positive(n);
    unsigned count = 0;
    walk_factors(n, table, [&](u64, unsigned) {
        ++count;
        return true;
    });
    return count;
}

bool omega_at_most(u64 n, unsigned k, const SpfTable* table) {
    require_positive(n);
    unsigned count = 0;
    walk_factors(n, table, [&](u64, unsigned) { return ++count <= k; });
    return count <= k;
}

bool is_unit_or_prime(u64 n, const SpfTable* table) {
    require_positive(n);
    if (n == 1) return true;
    if (table != nullptr && table->covers(n)) return table->spf(n) == n;
    return is_prime(n);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (u64 a : kWitnesses)
        if (!strong_probable_prime(n, a, d, s)) return false;
    return true;
}

bool is_squarefree(u64 n, const SpfTable* table) {
    require_positive(n);
    bool squarefree = true;
    walk_factors(n, table, [&](u64, unsigned e) {
        squarefree = (e == 1);
        return squarefree;
    });
    return squarefree;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) throw DomainError("Kronecker symbol (a/0) is not defined here");
    int result = 1;
    if (n < 0) {
        if (a < 0) result = -result;
    }
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);

    if (m % 2 == 0) {
        if (a % 2 == 0) return 0;
        // (a/2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        const i64 r8 = mod_floor(a, 8);
        const int two = (r8 == 1 || r8 == 7) ? 1 : -1;
        while (m % 2 == 0) {
            m /= 2;
            result *= two;
        }
    }
    // Jacobi symbol (a/m), m odd.
    u64 x = static_cast<u64>(mod_floor(a, static_cast<i64>(m)));
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const u64 r8 = m % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

} // namespace qs
