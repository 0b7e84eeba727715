#include "qs/omega_profile.hpp"

#include "qs/errors.hpp"

namespace qs {

namespace {

u64 first_x(const OmegaQuery& q) {
    u64 x = q.x_min;
    if (q.parity == Parity::odd && x % 2 == 0) ++x;
    if (q.parity == Parity::even && x % 2 == 1) ++x;
    return x;
}

u64 x_step(Parity p) { return p == Parity::all ? 1 : 2; }

void require_d(u64 d) {
    if (d == 0) throw DomainError("d must be positive");
}

// Iterates the query range, skipping zero values. f(x, value) returns false to stop.
template <typename F>
void for_each_value(const OmegaQuery& q, F&& f) {
    require_d(q.d);
    const u64 top = isqrt(q.d);
    const u64 step = x_step(q.parity);
    for (u64 x = first_x(q); x <= top; x += step) {
        const u64 v = profile_value(q, x);
        if (v == 0) continue;
        if (!f(x, v)) return;
    }
}

unsigned big_omega(u64 n, const SpfTable* table) {
    unsigned total = 0;
    for (const auto& pp : factor(n, table).factors) total += pp.exponent;
    return total;
}

} // namespace

u64 profile_value(const OmegaQuery& q, u64 x) {
    const u64 sq = x * x;
    return q.sign == Sign::plus ? q.d + sq : q.d - sq;
}

OmegaReport omega_profile(const OmegaQuery& query, const SpfTable* table) {
    OmegaReport report;
    for_each_value(query, [&](u64 x, u64 v) {
        const unsigned w = omega(v, table);
        if (!report.witness_x || w > report.max_omega) {
            report.max_omega = w;
            report.witness_x = x;
        }
        ++report.evaluated_count;
        return true;
    });
    if (report.witness_x)
        report.witness_factorization = factor(profile_value(query, *report.witness_x), table);
    return report;
}

bool omega_profile_at_most(const OmegaQuery& query, unsigned k, const SpfTable* table) {
    bool ok = true;
    for_each_value(query, [&](u64, u64 v) {
        ok = omega_at_most(v, k, table);
        return ok;
    });
    return ok;
}

OmegaQuery m_odd_query(u64 d) { return {d, Sign::plus, Parity::odd, 1}; }
OmegaQuery m_even_query(u64 d) { return {d, Sign::plus, Parity::even, 2}; }
OmegaQuery m_even_real_query(u64 d) { return {d, Sign::minus, Parity::even, 2}; }
OmegaQuery m_all_from_zero_query(u64 d) { return {d, Sign::plus, Parity::all, 0}; }

unsigned m_odd(u64 d, const SpfTable* t) { return omega_profile(m_odd_query(d), t).max_omega; }
unsigned m_even(u64 d, const SpfTable* t) { return omega_profile(m_even_query(d), t).max_omega; }
unsigned m_even_real(u64 d, const SpfTable* t) { return omega_profile(m_even_real_query(d), t).max_omega; }
unsigned m_all_from_zero(u64 d, const SpfTable* t) {
    return omega_profile(m_all_from_zero_query(d), t).max_omega;
}

FrShape fr_shape(FrVariant variant) {
    switch (variant) {
    case FrVariant::imag_odd: return {Sign::plus, Parity::odd, 1, 4, 4, 3};
    case FrVariant::imag_even: return {Sign::plus, Parity::even, 0, 2, 4, 2};
    case FrVariant::real: return {Sign::minus, Parity::odd, 3, 4, 8, 5};
    }
    throw DomainError("unknown Frobenius-Rabinowitsch variant");
}

FrReport fr_report(u64 d, FrVariant variant, const SpfTable* table) {
    const FrShape s = fr_shape(variant);
    require_d(d);
    if (d % s.modulus != s.residue)
        throw DomainError("variant " + std::string(to_string(variant)) + " requires d = " +
                          std::to_string(s.residue) + " mod " + std::to_string(s.modulus));
    FrReport report;
    const OmegaQuery q{d, s.sign, s.parity, s.x_min};
    for_each_value(q, [&](u64 x, u64 v) {
        const u64 quotient = v / s.divisor;
        const unsigned w = big_omega(quotient, table);
        if (!report.witness_x || w > report.max_big_omega) {
            report.max_big_omega = w;
            report.witness_x = x;
        }
        if (w > 1) report.holds = false;
        ++report.evaluated_count;
        return true;
    });
    return report;
}

bool fr_check(u64 d, FrVariant variant, const SpfTable* table) {
    const FrShape s = fr_shape(variant);
    require_d(d);
    if (d % s.modulus != s.residue)
        throw DomainError("variant " + std::string(to_string(variant)) + " requires d = " +
                          std::to_string(s.residue) + " mod " + std::to_string(s.modulus));
    bool ok = true;
    for_each_value({d, s.sign, s.parity, s.x_min}, [&](u64, u64 v) {
        ok = is_unit_or_prime(v / s.divisor, table);
        return ok;
    });
    return ok;
}

std::string_view to_string(Parity p) {
    switch (p) {
    case Parity::odd: return "odd";
    case Parity::even: return "even";
    case Parity::all: return "all";
    }
    return "?";
}

std::string_view to_string(FrVariant v) {
    switch (v) {
    case FrVariant::imag_odd: return "imag-odd";
    case FrVariant::imag_even: return "imag-even";
    case FrVariant::real: return "real";
    }
    return "?";
}

Parity parse_parity(std::string_view text) {
    if (text == "odd") return Parity::odd;
    if (text == "even") return Parity::even;
    if (text == "all") return Parity::all;
    throw ConfigError("parity must be odd, even or all (got '" + std::string(text) + "')");
}

Sign parse_sign(std::string_view text) {
    if (text == "plus" || text == "+") return Sign::plus;
    if (text == "minus" || text == "-") return Sign::minus;
    throw ConfigError("sign must be plus or minus (got '" + std::string(text) + "')");
}

FrVariant parse_fr_variant(std::string_view text) {
    if (text == "imag-odd" || text == "imag_odd") return FrVariant::imag_odd;
    if (text == "imag-even" || text == "imag_even") return FrVariant::imag_even;
    if (text == "real") return FrVariant::real;
    throw ConfigError("variant must be imag-odd, imag-even or real (got '" + std::string(text) + "')");
}

} // namespace qs
