#pragma once

#include "qs/forms.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace qs {

using BigInt = boost::multiprecision::cpp_int;

// Indefinite reduced form: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced_real(const Form& f);

// Every primitive reduced form of discriminant D > 0, sorted.
std::vector<Form> reduced_forms_real(const QuadDiscriminant& D);

// One reduction step (a, b, c) -> (c, b', a') with b' = -b mod 2c and sqrt(D) - 2|c| < b' < sqrt(D).
// Maps reduced forms to reduced forms.
Form rho(const Form& f);

/// Cycles of reduced forms under rho: one cycle per narrow (proper) class.
std::vector<std::vector<Form>> real_cycles(const QuadDiscriminant& D);

u64 narrow_class_number(const QuadDiscriminant& D);

/// Wide class number of a fundamental D > 0: cycles of f and (-a, b, -c) are identified.
u64 class_number_real(const QuadDiscriminant& D);

/// Unit (t + u sqrt(d)) / denominator with t^2 - d u^2 = norm_sign * denominator^2.
struct PellSolution {
    u64 d = 0;
    BigInt t;
    BigInt u;
    int norm_sign = 1;
    unsigned denominator = 1;
};

// Minimal t, u > 0 with t^2 - d u^2 = +-1, from the continued fraction of sqrt(d).
PellSolution pell_unit(u64 d);

/// Fundamental unit of the order of discriminant d (d = 1 mod 4) or 4d (otherwise).
/// For d = 1 mod 4 this solves t^2 - d u^2 = +-4, so half-integer units such as
/// (3 + sqrt 13) / 2 come back with denominator 2.
PellSolution fundamental_unit(u64 d);

// Continued-fraction period of (P + sqrt(D)) / Q after the first partial quotient.
std::vector<i64> cf_period(u64 D, i64 P, i64 Q);

} // namespace qs
