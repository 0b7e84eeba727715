#pragma once

#include "qs/arith.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace qs {

enum class FieldKind { imaginary, real };

/// Discriminant of a quadratic order: nonzero, D = 0 or 1 mod 4, and not a square when positive.
class QuadDiscriminant {
public:
    explicit QuadDiscriminant(i64 value); // validates, DomainError otherwise

    i64 value() const { return value_; }
    bool imaginary() const { return value_ < 0; }
    FieldKind kind() const { return imaginary() ? FieldKind::imaginary : FieldKind::real; }
    u64 magnitude() const { return static_cast<u64>(value_ < 0 ? -value_ : value_); }

    friend bool operator==(const QuadDiscriminant&, const QuadDiscriminant&) = default;

private:
    i64 value_;
};

bool is_fundamental_discriminant(i64 D);

// Field discriminant of Q(sqrt(-d)) or Q(sqrt(d)) for squarefree d.
QuadDiscriminant discriminant_of(u64 d, FieldKind kind);

/// a x^2 + b x y + c y^2.
struct BinaryQuadraticForm {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;

    i64 discriminant() const;
    bool primitive() const;
    std::string to_string() const; // "(a,b,c)"

    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
    friend auto operator<=>(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

using Form = BinaryQuadraticForm;

Form principal_form(const QuadDiscriminant& D);

// Positive definite forms only.
bool is_reduced_imaginary(const Form& f);
Form reduce_imaginary(Form f);

// Every primitive reduced form of discriminant D < 0, sorted by (a, b).
std::vector<Form> reduced_forms_imaginary(const QuadDiscriminant& D);

u64 class_number_imaginary(const QuadDiscriminant& D);

// Gauss composition of primitive positive definite forms; returns the reduced representative.
Form compose(const Form& f, const Form& g);
Form inverse(const Form& f);
Form power(const Form& f, u64 n);
u64 form_order(const Form& f);

struct ClassGroupStructure {
    QuadDiscriminant D;
    u64 h = 1;
    // d_1 | d_2 | ... with product h; empty for the trivial group. Not computed for real D.
    std::optional<std::vector<u64>> elementary_divisors;
    std::vector<Form> generators;
};

inline constexpr u64 kMaxEnumeratedDiscriminant = 10'000'000;

// Imaginary D: full enumeration of the group. Real D: class number only.
// |D| above max_abs_disc raises ResourceError.
ClassGroupStructure class_group_structure(const QuadDiscriminant& D,
                                          u64 max_abs_disc = kMaxEnumeratedDiscriminant);

enum class Splitting { split, ramified, inert };
const char* to_string(Splitting s);

Splitting splitting_type(const QuadDiscriminant& D, u64 ell);

// (ell, b, c) with the smallest b >= 0, b = D mod 2, b^2 = D mod 4 ell. Inert ell is a DomainError.
Form prime_form(const QuadDiscriminant& D, u64 ell);
u64 order_of_prime_form(const QuadDiscriminant& D, u64 ell);

/// Genus data of a fundamental imaginary discriminant.
struct GenusData {
    unsigned two_rank = 0;
    std::vector<u64> odd_primes; // odd primes dividing D

    // True when (ell / p) = +1 for every odd prime p | D.
    bool square_class_test(u64 ell) const;
};

GenusData genus_data(const QuadDiscriminant& D);

} // namespace qs
