#pragma once

#include "qs/arith.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qs {

enum class Parity { odd, even, all };
enum class Sign { plus = 1, minus = -1 };

/// Range description for max { omega(d + sign * x^2) : x_min <= x <= isqrt(d), x of the given parity }.
struct OmegaQuery {
    u64 d = 1;
    Sign sign = Sign::plus;
    Parity parity = Parity::odd;
    u64 x_min = 1;
};

struct OmegaReport {
    unsigned max_omega = 0;
    std::optional<u64> witness_x;              // smallest x attaining max_omega
    std::optional<Factorization> witness_factorization;
    u64 evaluated_count = 0;
};

// Value d + sign * x^2; zero when sign is minus and x^2 == d.
u64 profile_value(const OmegaQuery& q, u64 x);

OmegaReport omega_profile(const OmegaQuery& query, const SpfTable* table = nullptr);

// Early-exit form of omega_profile(query).max_omega <= k.
bool omega_profile_at_most(const OmegaQuery& query, unsigned k, const SpfTable* table = nullptr);

OmegaQuery m_odd_query(u64 d);
OmegaQuery m_even_query(u64 d);
OmegaQuery m_even_real_query(u64 d);
OmegaQuery m_all_from_zero_query(u64 d);

unsigned m_odd(u64 d, const SpfTable* table = nullptr);
unsigned m_even(u64 d, const SpfTable* table = nullptr);
unsigned m_even_real(u64 d, const SpfTable* table = nullptr);
unsigned m_all_from_zero(u64 d, const SpfTable* table = nullptr);

enum class FrVariant { imag_odd, imag_even, real };

/// Range and divisor of one Frobenius-Rabinowitsch quotient family:
///   imag_odd : (d + x^2) / 4, odd x in [1, sqrt d],  d = 3 mod 4
///   imag_even: (d + x^2) / 2, even x in [0, sqrt d], d = 2 mod 4
///   real     : (d - x^2) / 4, odd x in [3, sqrt d],  d = 5 mod 8
struct FrShape {
    Sign sign;
    Parity parity;
    u64 x_min;
    u64 divisor;
    u64 modulus;
    u64 residue;
};

FrShape fr_shape(FrVariant variant);

// Throws DomainError when d misses the variant's residue class.
bool fr_check(u64 d, FrVariant variant, const SpfTable* table = nullptr);

/// Per-quotient detail for reporting: the largest number of prime factors counted
/// with multiplicity over the quotients, and the smallest x attaining it.
struct FrReport {
    bool holds = true;
    unsigned max_big_omega = 0;
    std::optional<u64> witness_x;
    u64 evaluated_count = 0;
};

FrReport fr_report(u64 d, FrVariant variant, const SpfTable* table = nullptr);

std::string_view to_string(Parity p);
std::string_view to_string(FrVariant v);
Parity parse_parity(std::string_view text);
Sign parse_sign(std::string_view text);
FrVariant parse_fr_variant(std::string_view text);

} // namespace qs
