#pragma once

#include "qs/arith.hpp"
#include "qs/omega_profile.hpp"

#include <optional>
#include <vector>

namespace qs {

struct XYPair {
    u64 x = 0;
    u64 y = 0;
    friend bool operator==(const XYPair&, const XYPair&) = default;
};

/// Smallest (x, y) in [0, sqrt p)^2 with p + x^2 = 2 y^2, for a prime p = +-1 mod 8.
/// Throws DomainError on other p and InvariantViolation if the range holds no solution.
XYPair solve_p_x2_2y2(u64 p);

// Every solution in [0, sqrt p)^2, ascending in x.
std::vector<XYPair> all_solutions_p_x2_2y2(u64 p);

struct TwoEllSquaredWitness {
    enum class Kind {
        two_ell_squared, // d + sign x^2 = 2 l^2
        degenerate,      // sign minus only: d = l^2 + 1, x = l - 1, d - x^2 = 2 l
        absent,
    };
    Kind kind = Kind::absent;
    std::optional<u64> x;
};

/// For squarefree d = 2 mod 4 and an odd prime l <= sqrt(d) that splits in Q(sqrt(-d))
/// (sign plus) or Q(sqrt(d)) (sign minus), looks for x with d + sign x^2 = 2 l^2; the minus
/// case also recognises the d = l^2 + 1 branch. Absence for sign plus rules out M_even(d) <= 2.
TwoEllSquaredWitness find_2l2_witness(u64 d, u64 ell, Sign sign);

// Smallest x in [0, l] of the requested parity with l | d + x^2; empty when -d is not a square mod l.
std::optional<u64> residue_witness(u64 d, u64 ell, Parity parity);

} // namespace qs
