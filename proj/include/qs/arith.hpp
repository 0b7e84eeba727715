#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qs {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Sorted prime-power decomposition of a positive integer. n == 1 has no factors.
struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;

    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    bool squarefree() const;
    std::string to_string() const; // "2^2 * 3 * 7", "1" for n == 1

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Smallest-prime-factor table for 2 <= k <= limit. Immutable once built, so one
/// instance can be shared by any number of reader threads.
class SpfTable {
public:
    // Entries are 32-bit, so the cap also keeps every stored factor representable.
    static constexpr u64 kDefaultMaxEntries = u64{1} << 31;

    explicit SpfTable(u64 limit, u64 max_entries = kDefaultMaxEntries);

    u64 limit() const { return limit_; }
    bool covers(u64 n) const { return n <= limit_; }
    u64 spf(u64 k) const { return spf_[k]; } // requires 2 <= k <= limit()

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
};

// Throws DomainError for limit < 2 and ResourceError above max_entries.
SpfTable build_spf(u64 limit, u64 max_entries = SpfTable::kDefaultMaxEntries);

u64 isqrt(u64 n);
bool is_square(u64 n);

// Uses the table when it covers n, trial division up to sqrt(n) otherwise. n == 0 is a DomainError.
Factorization factor(u64 n, const SpfTable* table = nullptr);

unsigned omega(u64 n, const SpfTable* table = nullptr);

// omega(n) <= k, stopping as soon as k + 1 distinct primes have been seen.
bool omega_at_most(u64 n, unsigned k, const SpfTable* table = nullptr);

// n == 1 or n prime, i.e. at most one prime factor counted with multiplicity.
bool is_unit_or_prime(u64 n, const SpfTable* table = nullptr);

/// Deterministic Miller-Rabin. The witness set {2, 3, 5, ..., 37} (the first twelve
/// primes) has no strong pseudoprime below 3.3e24, which covers every 64-bit input.
bool is_prime(u64 n);

bool is_squarefree(u64 n, const SpfTable* table = nullptr);

/// Kronecker symbol (a/n). n == 0 is rejected with DomainError.
int kronecker(i64 a, i64 n);

// Floor division and nonnegative remainder for signed operands.
constexpr i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
constexpr i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

} // namespace qs
