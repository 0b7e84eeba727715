#include "qs/theorems.hpp"

#include "qs/errors.hpp"
#include "qs/forms.hpp"
#include "qs/real_quadratic.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <iterator>
#include <span>

namespace qs {

namespace {

// T1.1: 10 values, fnv1a64 0xba714d5170161f4e
constexpr u64 kT1_1[] = {
    1, 9, 25, 27, 49, 63, 135, 175, 207, 343,
};
// T1.2: 13 values, fnv1a64 0x88bd19dac19740ac
constexpr u64 kT1_2[] = {
    3, 5, 11, 13, 17, 19, 37, 43, 67, 73,
    97, 163, 193,
};
// T1.3: 14 primes and 5 products of two primes, fnv1a64 0xea8646f94a92c8be
constexpr u64 kT1_3[] = {
    7, 15, 23, 31, 39, 47, 55, 79, 103, 127,
    151, 223, 247, 463, 487, 583, 823, 1087, 1423,
};
// T1.4: 10 values, fnv1a64 0xa47168a5a3963de4
constexpr u64 kT1_4[] = {
    2, 6, 10, 14, 22, 34, 46, 58, 82, 142,
};
// T1.5: 12 values, fnv1a64 0xb4c7e2107b8331c0
constexpr u64 kT1_5[] = {
    2, 6, 10, 14, 22, 30, 34, 46, 58, 70,
    82, 142,
};
// T1.6: 1 value, fnv1a64 0x07f88a07b4b9fb0c
constexpr u64 kT1_6[] = {
    18,
};
// T1.8: 5 values, fnv1a64 0x9f766ce2fe06e304
constexpr u64 kT1_8[] = {
    18, 50, 54, 90, 98,
};
// C1: 202 values, fnv1a64 0x1dcaa5159b73c7a5
constexpr u64 kC1[] = {
    2, 6, 10, 14, 22, 26, 30, 34, 38, 42,
    46, 58, 62, 66, 70, 74, 78, 82, 86, 94,
    102, 106, 110, 118, 122, 130, 138, 142, 154, 158,
    166, 178, 190, 202, 210, 214, 218, 226, 238, 262,
    274, 282, 298, 302, 310, 322, 346, 358, 366, 382,
    394, 418, 422, 442, 466, 478, 498, 502, 518, 526,
    538, 562, 598, 610, 622, 658, 682, 694, 718, 730,
    742, 754, 778, 802, 826, 858, 862, 898, 958, 982,
    1030, 1090, 1138, 1162, 1198, 1222, 1282, 1318, 1366, 1402,
    1558, 1582, 1618, 1642, 1738, 1822, 1870, 1918, 1978, 2002,
    2038, 2062, 2158, 2182, 2242, 2302, 2398, 2458, 2482, 2542,
    2578, 2818, 2878, 2902, 2962, 2998, 3298, 3322, 3382, 3502,
    3658, 3802, 3958, 4162, 4222, 4258, 4558, 4678, 4918, 5098,
    5182, 5338, 5602, 5758, 5842, 6238, 6262, 6598, 6658, 6742,
    6862, 7078, 7282, 7522, 8002, 8338, 8782, 9262, 9718, 10138,
    10822, 10858, 11278, 11302, 12142, 12202, 12538, 12742, 13798, 13918,
    14422, 14722, 15082, 15178, 16102, 17158, 18202, 18418, 19462, 21058,
    23398, 23662, 24082, 25162, 25642, 26398, 27358, 28582, 29362, 30178,
    30622, 31882, 32362, 33742, 34318, 35722, 38578, 41218, 45742, 47338,
    48742, 61462, 62302, 83218, 85402, 92698, 92878, 94378, 102958, 166798,
    225142, 288502,
};
// C2: 44 values, fnv1a64 0x40fafaa519751007
constexpr u64 kC2[] = {
    18, 50, 54, 90, 98, 126, 162, 198, 242, 250,
    294, 342, 378, 450, 522, 550, 558, 702, 722, 850,
    882, 918, 1078, 1150, 1422, 1450, 2662, 2842, 3250, 3798,
    4018, 4698, 4750, 5350, 7018, 9802, 11650, 12838, 16762, 17182,
    20938, 23998, 30682, 48778,
};
// C3: 16 values, fnv1a64 0xace40f93f1cf6ead
constexpr u64 kC3[] = {
    2, 6, 10, 14, 22, 26, 30, 38, 42, 62,
    110, 122, 182, 278, 362, 398,
};
// FR1: 7 values, fnv1a64 0x3634620debd614e3
constexpr u64 kFR1[] = {
    3, 7, 11, 19, 43, 67, 163,
};
// FR2: 5 values, fnv1a64 0xf2250a016cd399b1
constexpr u64 kFR2[] = {
    2, 6, 10, 22, 58,
};
// FR-real: 12 values, fnv1a64 0x8fc556ccb3aad5db
constexpr u64 kFR_real[] = {
    13, 21, 29, 37, 53, 77, 101, 173, 197, 293,
    437, 677,
};

constexpr const char* kBoundedCaveat = "bounded search: agreement shows the list is exact up to the bound";
constexpr const char* kConjectureCaveat =
    "conjectural list: agreement certifies the solutions up to the bound only; completeness is not certified";
constexpr const char* kOneExceptionCaveat =
    "the list is complete with at most one possible exception; a bounded search cannot exclude that "
    "exception beyond the bound";

struct ListEntry {
    std::span<const u64> values;
    std::size_t count;
    u64 checksum;
};

std::vector<u64> checked(const ListEntry& e, const char* id) {
    std::vector<u64> v(e.values.begin(), e.values.end());
    if (v.size() != e.count || value_list_checksum(v) != e.checksum || !std::is_sorted(v.begin(), v.end()) ||
        std::adjacent_find(v.begin(), v.end()) != v.end())
        throw InvariantViolation(std::string("embedded value list for ") + id + " fails its checksum");
    return v;
}

TheoremSpec make(const char* id, const char* statement, const char* filter, ProfileKind profile,
                 unsigned threshold, ListEntry list, u64 bound, const char* caveat, bool conjecture = false) {
    TheoremSpec s;
    s.id = id;
    s.statement = statement;
    s.filter = DFilter::parse(filter);
    s.profile = profile;
    s.threshold = threshold;
    s.expected = checked(list, id);
    s.default_bound = bound;
    s.caveat = caveat;
    s.conjecture = conjecture;
    return s;
}

std::vector<TheoremSpec> build_theorems() {
    using P = ProfileKind;
    std::vector<TheoremSpec> v;
    v.push_back(make("T1.1", "odd d, neither prime nor a product of two distinct primes: M_odd(d) <= 2",
                     "odd,composite-non-pq", P::m_odd, 2, {kT1_1, 10, 0xba714d5170161f4eULL}, 1'000'000,
                     kBoundedCaveat));
    v.push_back(make("T1.2", "odd d != 7 mod 8, prime or a product of two distinct primes: M_odd(d) <= 2",
                     "odd,nres=7/8,prime-or-pq", P::m_odd, 2, {kT1_2, 13, 0x88bd19dac19740acULL}, 1'000'000,
                     kBoundedCaveat));
    v.push_back(make("T1.3", "d = 7 mod 8, prime or a product of two distinct primes: M_odd(d) <= 2",
                     "res=7/8,prime-or-pq", P::m_odd, 2, {kT1_3, 19, 0xea8646f94a92c8beULL}, 1'000'000,
                     kOneExceptionCaveat));
    v.push_back(make("T1.4", "squarefree d = 2 mod 4: omega(d + x^2) <= 2 for every x in [0, sqrt d]",
                     "res=2/4,squarefree", P::m_all, 2, {kT1_4, 10, 0xa47168a5a3963de4ULL}, 1'000'000,
                     kBoundedCaveat));
    v.push_back(make("T1.5", "squarefree d = 2 mod 4: M_even(d) <= 2", "res=2/4,squarefree", P::m_even, 2,
                     {kT1_5, 12, 0xb4c7e2107b8331c0ULL}, 1'000'000, kBoundedCaveat));
    v.push_back(make("T1.6", "non-squarefree d = 2 mod 4: M_even(d) <= 2", "res=2/4,nonsquarefree", P::m_even, 2,
                     {kT1_6, 1, 0x07f88a07b4b9fb0cULL}, 10'000, kBoundedCaveat));
    v.push_back(make("T1.8", "non-squarefree d = 2 mod 4: M'_even(d) <= 2", "res=2/4,nonsquarefree",
                     P::m_even_real, 2, {kT1_8, 5, 0x9f766ce2fe06e304ULL}, 10'000, kBoundedCaveat));
    v.push_back(make("C1", "squarefree d = 2 mod 4: M_odd(d) <= 2", "res=2/4,squarefree", P::m_odd, 2,
                     {kC1, 202, 0x1dcaa5159b73c7a5ULL}, 1'000'000, kConjectureCaveat, true));
    v.push_back(make("C2", "non-squarefree d = 2 mod 4: M_odd(d) <= 2", "res=2/4,nonsquarefree", P::m_odd, 2,
                     {kC2, 44, 0x40fafaa519751007ULL}, 1'000'000, kConjectureCaveat, true));
    v.push_back(make("C3", "squarefree d = 2 mod 4: M'_even(d) <= 2", "res=2/4,squarefree", P::m_even_real, 2,
                     {kC3, 16, 0xace40f93f1cf6eadULL}, 10'000, kConjectureCaveat, true));
    v.push_back(make("FR1", "d = 3 mod 4: (d + x^2)/4 is 1 or prime for every odd x in [1, sqrt d]", "res=3/4",
                     P::fr_imag_odd, 1, {kFR1, 7, 0x3634620debd614e3ULL}, 10'000, kBoundedCaveat));
    v.push_back(make("FR2", "d = 2 mod 4: (d + x^2)/2 is 1 or prime for every even x in [0, sqrt d]", "res=2/4",
                     P::fr_imag_even, 1, {kFR2, 5, 0xf2250a016cd399b1ULL}, 10'000, kBoundedCaveat));
    // min=9 keeps the x-range [3, sqrt d] nonempty; d = 5 would pass vacuously.
    v.push_back(make("FR-real", "d = 5 mod 8: (d - x^2)/4 is 1 or prime for every odd x in [3, sqrt d]",
                     "res=5/8,min=9", P::fr_real, 1, {kFR_real, 12, 0x8fc556ccb3aad5dbULL}, 10'000,
                     kBoundedCaveat));
    return v;
}

std::vector<u64> set_difference(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string num(u64 x) { return std::to_string(x); }

// 2^e <= n, exactly.
bool pow2_at_most(u64 e, u64 n) { return e < 63 && (u64{1} << e) <= n; }

ImplicationCheck divides_check(u64 d, u64 h, u64 m, const std::string& what) {
    return {d, "h divides " + num(m), m % h == 0, what + " = " + num(h)};
}

} // namespace

u64 value_list_checksum(const std::vector<u64>& values) {
    u64 h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 0x100000001b3ULL;
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) mix(',');
        for (char c : std::to_string(values[i])) mix(static_cast<unsigned char>(c));
    }
    return h;
}

const std::vector<TheoremSpec>& builtin_theorems() {
    static const std::vector<TheoremSpec> specs = build_theorems();
    return specs;
}

const TheoremSpec& lookup_theorem(std::string_view id) {
    for (const auto& s : builtin_theorems())
        if (s.id == id) return s;
    throw DomainError("unknown theorem id '" + std::string(id) + "'");
}

VerificationReport verify(const TheoremSpec& spec, std::optional<u64> bound, const VerifyOptions& options) {
    const u64 b = bound.value_or(spec.default_bound);
    const u64 largest = spec.expected.empty() ? 0 : spec.expected.back();
    if (b < largest)
        throw ConfigError("bound " + num(b) + " is below the largest expected value " + num(largest) + " of " +
                          spec.id);
    const auto start = std::chrono::steady_clock::now();

    ScanJob job;
    job.lo = 1;
    job.hi = b;
    job.profile = spec.profile;
    job.threshold = spec.threshold;
    job.filter = spec.filter;
    job.chunk_size = options.chunk_size;
    ScanOptions so;
    so.workers = options.workers;
    so.sieve_limit = options.sieve_limit;

    VerificationReport r;
    r.id = spec.id;
    r.bound_used = b;
    r.caveat = spec.caveat;
    scan(job, so, [&](const ResultRecord& rec) { r.computed.push_back(rec.d); });
    r.missing = set_difference(spec.expected, r.computed);
    r.spurious = set_difference(r.computed, spec.expected);
    r.matched = r.missing.empty() && r.spurious.empty();
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<std::string> implication_ids() {
    return {"T1.2", "T1.3", "T1.3-p", "T1.3-pq", "T1.4", "T1.5", "T1.7", "C3", "FR1", "FR2", "FR-real"};
}

std::vector<ImplicationCheck> check_class_implications(std::string_view id) {
    std::vector<ImplicationCheck> out;
    if (id == "T1.2") {
        for (u64 d : lookup_theorem("T1.2").expected) {
            out.push_back({d, "d is prime", is_prime(d), ""});
            const u64 h = class_number_imaginary(discriminant_of(d, FieldKind::imaginary));
            out.push_back(divides_check(d, h, 4, "h(Q(sqrt -d))"));
        }
    } else if (id == "T1.3") {
        for (u64 d : lookup_theorem("T1.3").expected) {
            const QuadDiscriminant D = discriminant_of(d, FieldKind::imaginary);
            const ClassGroupStructure g = class_group_structure(D);
            const u64 ord2 = order_of_prime_form(D, 2);
            out.push_back({d, "h <= log(2d)/log 2", pow2_at_most(g.h, 2 * d), "h = " + num(g.h)});
            out.push_back({d, "cyclic, generated by a norm-2 prime form", ord2 == g.h,
                           "h = " + num(g.h) + ", order of " + prime_form(D, 2).to_string() + " = " + num(ord2)});
        }
    } else if (id == "T1.3-p") {
        for (u64 d : lookup_theorem("T1.3").expected) {
            if (!is_prime(d)) continue;
            const u64 h = class_number_imaginary(discriminant_of(d, FieldKind::imaginary));
            out.push_back({d, "h <= log|d_K|/log 2 + 1", h >= 1 && pow2_at_most(h - 1, d), "h = " + num(h)});
        }
    } else if (id == "T1.3-pq") {
        for (u64 d : lookup_theorem("T1.3").expected) {
            if (is_prime(d)) continue;
            const Factorization f = factor(d);
            const u64 s = f.factors[0].prime + f.factors[1].prime;
            const u64 h = class_number_imaginary(discriminant_of(d, FieldKind::imaginary));
            const bool pow2 = (s & (s - 1)) == 0;
            const u64 a = pow2 ? static_cast<u64>(std::countr_zero(s)) : 0;
            out.push_back({d, "p + q = 2^a and h divides 2a - 4", pow2 && a >= 3 && (2 * a - 4) % h == 0,
                           "p + q = " + num(s) + ", h = " + num(h)});
            out.push_back({d, "h <= log|d_K|/log 2 - 2", pow2_at_most(h + 2, d), "h = " + num(h)});
        }
    } else if (id == "T1.4") {
        for (u64 d : lookup_theorem("T1.4").expected) {
            const ClassGroupStructure g = class_group_structure(discriminant_of(d, FieldKind::imaginary));
            out.push_back({d, "cyclic", g.elementary_divisors->size() <= 1, "h = " + num(g.h)});
            out.push_back(divides_check(d, g.h, 4, "h(-4d)"));
        }
    } else if (id == "T1.5") {
        for (u64 d : lookup_theorem("T1.5").expected) {
            const u64 h = class_number_imaginary(discriminant_of(d, FieldKind::imaginary));
            out.push_back(divides_check(d, h, 16, "h(-4d)"));
        }
    } else if (id == "T1.7" || id == "C3") {
        for (u64 d : lookup_theorem("C3").expected) {
            const u64 h = class_number_real(discriminant_of(d, FieldKind::real));
            out.push_back(divides_check(d, h, 16, "h(4d)"));
        }
    } else if (id == "FR1") {
        for (u64 d : lookup_theorem("FR1").expected) {
            out.push_back({d, "d is prime", is_prime(d), ""});
            const u64 h = class_number_imaginary(QuadDiscriminant(-static_cast<i64>(d)));
            out.push_back({d, "h(-d) = 1", h == 1, "h = " + num(h)});
        }
    } else if (id == "FR2") {
        for (u64 d : lookup_theorem("FR2").expected) {
            out.push_back({d, "d/2 is prime", is_prime(d / 2), "d/2 = " + num(d / 2)});
            const u64 h = class_number_imaginary(QuadDiscriminant(-4 * static_cast<i64>(d)));
            out.push_back({d, "h(-4d) = 2", h == 2, "h = " + num(h)});
        }
    } else if (id == "FR-real") {
        for (u64 d : lookup_theorem("FR-real").expected) {
            const u64 h = class_number_real(discriminant_of(d, FieldKind::real));
            out.push_back({d, "h_d = 1", h == 1, "h = " + num(h)});
            bool shaped = false;
            for (u64 m = 1; m * m <= d + 4; ++m)
                shaped = shaped || m * m + 4 == d || m * m == d + 4 || 4 * m * m + 1 == d;
            out.push_back({d, "squarefree of the form m^2 + 4, m^2 - 4 or 4m^2 + 1", shaped && is_squarefree(d), ""});
        }
    } else {
        throw DomainError("no class-group implication is attached to '" + std::string(id) + "'");
    }
    return out;
}

} // namespace qs
