#include "qs/witnesses.hpp"

#include "qs/errors.hpp"

namespace qs {

std::vector<XYPair> all_solutions_p_x2_2y2(u64 p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (p % 8 != 1 && p % 8 != 7) throw DomainError("p must be 1 or 7 mod 8, got " + std::to_string(p));
    std::vector<XYPair> out;
    for (u64 x = 0; x * x < p; ++x) {
        const u64 sum = p + x * x;
        if (sum % 2 != 0) continue;
        const u64 y2 = sum / 2;
        if (y2 < p && is_square(y2)) out.push_back({x, isqrt(y2)});
    }
    return out;
}

XYPair solve_p_x2_2y2(u64 p) {
    const auto sols = all_solutions_p_x2_2y2(p);
    if (sols.empty())
        throw InvariantViolation("no x < sqrt(" + std::to_string(p) + ") with p + x^2 = 2y^2");
    return sols.front();
}

TwoEllSquaredWitness find_2l2_witness(u64 d, u64 ell, Sign sign) {
    if (d % 4 != 2 || !is_squarefree(d))
        throw DomainError("d must be squarefree and 2 mod 4, got " + std::to_string(d));
    if (ell < 3 || !is_prime(ell)) throw DomainError("l must be an odd prime, got " + std::to_string(ell));
    if (ell * ell > d) throw DomainError("l must not exceed sqrt(d)");
    const i64 field = sign == Sign::plus ? -static_cast<i64>(d) : static_cast<i64>(d);
    if (kronecker(field, static_cast<i64>(ell)) != 1)
        throw DomainError(std::to_string(ell) + " does not split in Q(sqrt(" + std::to_string(field) + "))");

    const u64 target = 2 * ell * ell;
    TwoEllSquaredWitness w;
    if (sign == Sign::plus) {
        if (target >= d && is_square(target - d)) {
            w.kind = TwoEllSquaredWitness::Kind::two_ell_squared;
            w.x = isqrt(target - d);
        }
        return w;
    }
    if (d >= target && is_square(d - target)) {
        w.kind = TwoEllSquaredWitness::Kind::two_ell_squared;
        w.x = isqrt(d - target);
    } else if (d == ell * ell + 1) {
        w.kind = TwoEllSquaredWitness::Kind::degenerate;
        w.x = ell - 1;
    }
    return w;
}

std::optional<u64> residue_witness(u64 d, u64 ell, Parity parity) {
    if (ell == 0) throw DomainError("l must be positive");
    for (u64 x = 0; x <= ell; ++x) {
        if (parity == Parity::odd && x % 2 == 0) continue;
        if (parity == Parity::even && x % 2 == 1) continue;
        if ((d % ell + (x * x) % ell) % ell == 0) return x;
    }
    return std::nullopt;
}

} // namespace qs
