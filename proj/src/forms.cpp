#include "qs/forms.hpp"

#include "qs/errors.hpp"
#include "qs/real_quadratic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace qs {

namespace {

using i128 = __int128;

struct Xgcd {
    i64 u, v, g; // u*x + v*y = g >= 0
};

Xgcd xgcd(i64 x, i64 y) {
    i64 old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
        old_t = std::exchange(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_s, -old_t, -old_r};
    return {old_s, old_t, old_r};
}

i64 mod_floor128(i128 a, i64 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

i64 c_from(i64 a, i64 b, i64 D) {
    const i128 num = static_cast<i128>(b) * b - D;
    return static_cast<i64>(num / (4 * static_cast<i128>(a)));
}

// Brings b into (-a, a] keeping the discriminant.
void normalize(Form& f, i64 D) {
    const i64 two_a = 2 * f.a;
    if (-f.a < f.b && f.b <= f.a) return;
    i64 r = mod_floor(f.b, two_a);
    if (r > f.a) r -= two_a;
    f.b = r;
    f.c = c_from(f.a, f.b, D);
}

} // namespace

QuadDiscriminant::QuadDiscriminant(i64 value) : value_(value) {
    if (value == 0) throw DomainError("discriminant must be nonzero");
    const i64 r = mod_floor(value, 4);
    if (r != 0 && r != 1)
        throw DomainError("discriminant " + std::to_string(value) + " is not 0 or 1 mod 4");
    if (value > 0 && is_square(static_cast<u64>(value)))
        throw DomainError("positive discriminant " + std::to_string(value) + " is a perfect square");
}

bool is_fundamental_discriminant(i64 D) {
    if (D == 0 || D == 1) return false;
    const u64 mag = static_cast<u64>(D < 0 ? -D : D);
    if (D > 0 && is_square(mag)) return false;
    if (mod_floor(D, 4) == 1) return is_squarefree(mag);
    if (mod_floor(D, 4) != 0) return false;
    const i64 m = D / 4;
    const i64 r = mod_floor(m, 4);
    return (r == 2 || r == 3) && is_squarefree(mag / 4);
}

QuadDiscriminant discriminant_of(u64 d, FieldKind kind) {
    if (d == 0) throw DomainError("d must be positive");
    if (!is_squarefree(d))
        throw DomainError(std::to_string(d) + " is not squarefree; only maximal orders are supported");
    const i64 sd = static_cast<i64>(d);
    if (kind == FieldKind::imaginary) return QuadDiscriminant(d % 4 == 3 ? -sd : -4 * sd);
    if (d < 2) throw DomainError("real quadratic fields need d >= 2");
    return QuadDiscriminant(d % 4 == 1 ? sd : 4 * sd);
}

i64 Form::discriminant() const {
    return static_cast<i64>(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c);
}

bool Form::primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

std::string Form::to_string() const {
    std::ostringstream out;
    out << '(' << a << ',' << b << ',' << c << ')';
    return out.str();
}

Form principal_form(const QuadDiscriminant& D) {
    const i64 b = mod_floor(D.value(), 4) == 1 ? 1 : 0;
    return {1, b, c_from(1, b, D.value())};
}

bool is_reduced_imaginary(const Form& f) {
    if (f.a <= 0 || f.discriminant() >= 0) return false;
    const i64 abs_b = f.b < 0 ? -f.b : f.b;
    if (!(abs_b <= f.a && f.a <= f.c)) return false;
    if ((abs_b == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

Form reduce_imaginary(Form f) {
    const i64 D = f.discriminant();
    if (D >= 0 || f.a <= 0) throw DomainError("reduce_imaginary needs a positive definite form, got " + f.to_string());
    normalize(f, D);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        f = {f.c, -f.b, f.a};
        normalize(f, D);
    }
    return f;
}

std::vector<Form> reduced_forms_imaginary(const QuadDiscriminant& D) {
    if (!D.imaginary()) throw DomainError("reduced_forms_imaginary needs D < 0");
    const i64 d = D.value();
    const u64 mag = D.magnitude();
    std::vector<Form> out;
    // a <= sqrt(|D| / 3) for reduced forms.
    for (i64 a = 1; static_cast<u64>(3 * a * a) <= mag; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - d, 2) != 0) continue;
            const i128 num = static_cast<i128>(b) * b - d;
            if (num % (4 * a) != 0) continue;
            const Form f{a, b, static_cast<i64>(num / (4 * a))};
            if (f.c < a || (f.c == a && b < 0)) continue;
            if (!f.primitive()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 class_number_imaginary(const QuadDiscriminant& D) { return reduced_forms_imaginary(D).size(); }

Form compose(const Form& f, const Form& g) {
    const i64 D = f.discriminant();
    if (g.discriminant() != D)
        throw DomainError("cannot compose " + f.to_string() + " and " + g.to_string() +
                          ": discriminants differ");
    if (D >= 0 || f.a <= 0 || g.a <= 0) throw DomainError("compose supports positive definite forms only");

    Form f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    const i64 a1 = f1.a, b1 = f1.b;
    const i64 a2 = f2.a, b2 = f2.b, c2 = f2.c;
    const i64 s = (b1 + b2) / 2;
    const i64 n = b2 - s;

    i64 y1 = 0, d = a1;
    if (a2 % a1 != 0) {
        const Xgcd e = xgcd(a2, a1);
        y1 = e.u;
        d = e.g;
    }
    i64 x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        const Xgcd e = xgcd(s, d);
        x2 = e.u;
        y2 = -e.v;
        d1 = e.g;
    }
    const i64 v1 = a1 / d1;
    const i64 v2 = a2 / d1;
    const i64 r = mod_floor128(static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * c2, v1);
    const i64 b3 = static_cast<i64>(b2 + 2 * static_cast<i128>(v2) * r);
    const i64 a3 = static_cast<i64>(static_cast<i128>(v1) * v2);
    return reduce_imaginary({a3, b3, c_from(a3, b3, D)});
}

Form inverse(const Form& f) { return reduce_imaginary({f.a, -f.b, f.c}); }

Form power(const Form& f, u64 n) {
    const QuadDiscriminant D(f.discriminant());
    Form result = principal_form(D);
    Form base = reduce_imaginary(f);
    while (n) {
        if (n & 1) result = compose(result, base);
        base = compose(base, base);
        n >>= 1;
    }
    return result;
}

u64 form_order(const Form& f) {
    const Form id = principal_form(QuadDiscriminant(f.discriminant()));
    const Form g = reduce_imaginary(f);
    Form acc = g;
    u64 k = 1;
    while (acc != id) {
        acc = compose(acc, g);
        ++k;
    }
    return k;
}

namespace {

std::vector<u64> distinct_primes(u64 n) {
    std::vector<u64> out;
    for (const auto& pp : factor(n).factors) out.push_back(pp.prime);
    return out;
}

// Invariant factors from the multiset of element orders of a finite abelian group.
std::vector<u64> invariant_factors(const std::vector<u64>& orders, u64 h) {
    // For each p | h, the p-part is determined by N_k = #{g : ord(g) | p^k}:
    // the number of cyclic factors of order >= p^k is log_p(N_k / N_{k-1}).
    std::vector<std::vector<u64>> parts_per_prime; // descending p-power parts
    for (u64 p : distinct_primes(h)) {
        std::vector<u64> count_by_exp; // count_by_exp[k] = #{g : ord(g) = p^k}
        for (u64 o : orders) {
            u64 e = 0, m = o;
            while (m % p == 0) { m /= p; ++e; }
            if (m != 1) continue;
            if (count_by_exp.size() <= e) count_by_exp.resize(e + 1, 0);
            ++count_by_exp[e];
        }
        std::vector<u64> factors_at_least; // factors_at_least[k-1] = #cyclic factors of order >= p^k
        u64 prev = count_by_exp.empty() ? 1 : count_by_exp[0];
        for (std::size_t k = 1; k < count_by_exp.size(); ++k) {
            const u64 cur = prev + count_by_exp[k];
            u64 ratio = cur / prev, logp = 0;
            while (ratio > 1) { ratio /= p; ++logp; }
            factors_at_least.push_back(logp);
            prev = cur;
        }
        std::vector<u64> parts; // p^e for each cyclic factor, descending
        for (std::size_t k = factors_at_least.size(); k-- > 0;) {
            const u64 next = (k + 1 < factors_at_least.size()) ? factors_at_least[k + 1] : 0;
            u64 pk = 1;
            for (std::size_t i = 0; i <= k; ++i) pk *= p;
            for (u64 j = next; j < factors_at_least[k]; ++j) parts.push_back(pk);
        }
        parts_per_prime.push_back(parts);
    }
    std::size_t rank = 0;
    for (const auto& parts : parts_per_prime) rank = std::max(rank, parts.size());
    std::vector<u64> divisors(rank, 1); // divisors[0] is the largest
    for (const auto& parts : parts_per_prime)
        for (std::size_t i = 0; i < parts.size(); ++i) divisors[i] *= parts[i];
    std::reverse(divisors.begin(), divisors.end());
    return divisors;
}

} // namespace

ClassGroupStructure class_group_structure(const QuadDiscriminant& D, u64 max_abs_disc) {
    if (D.magnitude() > max_abs_disc)
        throw ResourceError("|D| = " + std::to_string(D.magnitude()) + " exceeds the enumeration cap " +
                            std::to_string(max_abs_disc));
    if (!D.imaginary()) {
        ClassGroupStructure s{D, class_number_real(D), std::nullopt, {}};
        return s;
    }

    const std::vector<Form> forms = reduced_forms_imaginary(D);
    const u64 h = forms.size();
    std::map<Form, std::size_t> index;
    for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(forms[i], i);

    std::vector<u64> orders(h);
    for (std::size_t i = 0; i < h; ++i) orders[i] = form_order(forms[i]);

    ClassGroupStructure s{D, h, invariant_factors(orders, h), {}};

    // Greedy generating set, largest order first.
    std::vector<std::size_t> candidates(h);
    std::iota(candidates.begin(), candidates.end(), 0);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t x, std::size_t y) { return orders[x] > orders[y]; });
    std::vector<char> in_subgroup(h, 0);
    std::vector<std::size_t> members{index.at(principal_form(D))};
    in_subgroup[members.front()] = 1;
    for (std::size_t cand : candidates) {
        if (members.size() == h) break;
        if (in_subgroup[cand]) continue;
        s.generators.push_back(forms[cand]);
        const std::vector<std::size_t> base = members;
        for (std::size_t m : base) {
            Form x = compose(forms[m], forms[cand]);
            for (std::size_t idx = index.at(x); !in_subgroup[idx]; idx = index.at(x)) {
                in_subgroup[idx] = 1;
                members.push_back(idx);
                x = compose(x, forms[cand]);
            }
        }
    }
    return s;
}

const char* to_string(Splitting s) {
    switch (s) {
    case Splitting::split: return "split";
    case Splitting::ramified: return "ramified";
    case Splitting::inert: return "inert";
    }
    return "?";
}

Splitting splitting_type(const QuadDiscriminant& D, u64 ell) {
    if (!is_prime(ell)) throw DomainError(std::to_string(ell) + " is not prime");
    const int k = kronecker(D.value(), static_cast<i64>(ell));
    return k > 0 ? Splitting::split : (k == 0 ? Splitting::ramified : Splitting::inert);
}

Form prime_form(const QuadDiscriminant& D, u64 ell) {
    if (splitting_type(D, ell) == Splitting::inert)
        throw DomainError(std::to_string(ell) + " is inert for discriminant " + std::to_string(D.value()));
    const i64 l = static_cast<i64>(ell);
    const i64 Dv = D.value();
    const i128 modulus = 4 * static_cast<i128>(l);
    for (i64 b = mod_floor(Dv, 2); b < 2 * l; b += 2) {
        const i128 num = static_cast<i128>(b) * b - Dv;
        if (num % modulus == 0) return {l, b, static_cast<i64>(num / modulus)};
    }
    throw InvariantViolation("no square root of D mod 4l for a non-inert prime l");
}

u64 order_of_prime_form(const QuadDiscriminant& D, u64 ell) {
    if (!D.imaginary()) throw DomainError("order_of_prime_form needs an imaginary discriminant");
    return form_order(prime_form(D, ell));
}

bool GenusData::square_class_test(u64 ell) const {
    for (u64 p : odd_primes)
        if (kronecker(static_cast<i64>(ell), static_cast<i64>(p)) != 1) return false;
    return true;
}

GenusData genus_data(const QuadDiscriminant& D) {
    if (!D.imaginary() || !is_fundamental_discriminant(D.value()))
        throw DomainError("genus data needs a fundamental imaginary discriminant, got " + std::to_string(D.value()));
    GenusData g;
    const Factorization f = factor(D.magnitude());
    g.two_rank = f.omega() - 1;
    for (const auto& pp : f.factors)
        if (pp.prime != 2) g.odd_primes.push_back(pp.prime);
    return g;
}

} // namespace qs
