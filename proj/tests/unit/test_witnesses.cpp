#include "qs/errors.hpp"
#include "qs/forms.hpp"
#include "qs/omega_profile.hpp"
#include "qs/theorems.hpp"
#include "qs/witnesses.hpp"

#include <doctest.h>

using namespace qs;

TEST_CASE("p + x^2 = 2 y^2 examples") {
    CHECK(solve_p_x2_2y2(7) == XYPair{1, 2});
    CHECK(solve_p_x2_2y2(17) == XYPair{1, 3});
    CHECK(solve_p_x2_2y2(23) == XYPair{3, 4});
    CHECK_THROWS_AS(solve_p_x2_2y2(11), DomainError);
    CHECK_THROWS_AS(solve_p_x2_2y2(13), DomainError);
    CHECK_THROWS_AS(solve_p_x2_2y2(15), DomainError);
}

TEST_CASE("p + x^2 = 2 y^2 is solvable for every prime p = +-1 mod 8 below 1e5") {
    std::size_t unique = 0, total = 0;
    for (u64 p = 7; p < 100'000; ++p) {
        if (!is_prime(p) || (p % 8 != 1 && p % 8 != 7)) continue;
        const XYPair s = solve_p_x2_2y2(p);
        REQUIRE(p + s.x * s.x == 2 * s.y * s.y);
        REQUIRE(s.x * s.x < p);
        REQUIRE(s.y * s.y < p);
        const auto all = all_solutions_p_x2_2y2(p);
        REQUIRE_FALSE(all.empty());
        REQUIRE(all.front() == s);
        ++total;
        if (all.size() == 1) ++unique;
    }
    // Uniqueness of x is observed, not assumed.
    CHECK(unique == total);
}

TEST_CASE("2 l^2 witness examples") {
    const auto w14 = find_2l2_witness(14, 3, Sign::plus);
    CHECK(w14.kind == TwoEllSquaredWitness::Kind::two_ell_squared);
    CHECK(w14.x == 2u);

    const auto w10 = find_2l2_witness(10, 3, Sign::minus);
    CHECK(w10.kind == TwoEllSquaredWitness::Kind::degenerate);
    CHECK(w10.x == 2u);

    CHECK_THROWS_AS(find_2l2_witness(82, 5, Sign::plus), DomainError); // 5 is inert in Q(sqrt -82)
    CHECK_THROWS_AS(find_2l2_witness(18, 3, Sign::plus), DomainError); // not squarefree
    CHECK_THROWS_AS(find_2l2_witness(15, 3, Sign::plus), DomainError); // not 2 mod 4
    CHECK_THROWS_AS(find_2l2_witness(14, 9, Sign::plus), DomainError); // not prime
    CHECK_THROWS_AS(find_2l2_witness(14, 5, Sign::plus), DomainError); // 5 > sqrt 14
}

TEST_CASE("imaginary lemma: every split odd l <= sqrt d has a witness on the M_even list") {
    for (u64 d : lookup_theorem("T1.5").expected) {
        for (u64 ell = 3; ell * ell <= d; ell += 2) {
            if (!is_prime(ell) || kronecker(-static_cast<i64>(d), static_cast<i64>(ell)) != 1) continue;
            const auto w = find_2l2_witness(d, ell, Sign::plus);
            REQUIRE(w.kind == TwoEllSquaredWitness::Kind::two_ell_squared);
            REQUIRE(d + *w.x * *w.x == 2 * ell * ell);
        }
    }
}

TEST_CASE("imaginary lemma: an absent witness rules out M_even <= 2") {
    for (u64 d = 6; d <= 5000; d += 4) {
        if (!is_squarefree(d)) continue;
        bool absent = false;
        for (u64 ell = 3; ell * ell <= d; ell += 2)
            if (is_prime(ell) && kronecker(-static_cast<i64>(d), static_cast<i64>(ell)) == 1)
                absent = absent || find_2l2_witness(d, ell, Sign::plus).kind == TwoEllSquaredWitness::Kind::absent;
        if (absent) REQUIRE(m_even(d) > 2);
    }
}

TEST_CASE("real lemma: witnesses on the M'_even list") {
    for (u64 d : lookup_theorem("C3").expected) {
        for (u64 ell = 3; ell * ell <= d; ell += 2) {
            if (!is_prime(ell) || kronecker(static_cast<i64>(d), static_cast<i64>(ell)) != 1) continue;
            const auto w = find_2l2_witness(d, ell, Sign::minus);
            REQUIRE(w.kind != TwoEllSquaredWitness::Kind::absent);
            if (w.kind == TwoEllSquaredWitness::Kind::two_ell_squared)
                REQUIRE(d - *w.x * *w.x == 2 * ell * ell);
            else
                REQUIRE((d == ell * ell + 1 && *w.x == ell - 1));
        }
    }
}

TEST_CASE("residue witnesses for non-inert odd primes") {
    CHECK(residue_witness(14, 3, Parity::even) == 2u); // 3 | 18
    CHECK(residue_witness(14, 3, Parity::odd) == 1u);  // 3 | 15
    CHECK_FALSE(residue_witness(82, 5, Parity::odd).has_value());
    for (u64 d = 1; d <= 2000; ++d) {
        if (!is_squarefree(d)) continue;
        for (u64 ell = 3; ell <= 2 * isqrt(d) + 3; ell += 2) {
            if (!is_prime(ell) || kronecker(-static_cast<i64>(d), static_cast<i64>(ell)) == -1) continue;
            for (Parity par : {Parity::odd, Parity::even}) {
                const auto x = residue_witness(d, ell, par);
                REQUIRE(x.has_value());
                REQUIRE(*x <= ell);
                REQUIRE(*x % 2 == (par == Parity::odd ? 1u : 0u));
                REQUIRE((d + *x * *x) % ell == 0);
            }
        }
    }
}
