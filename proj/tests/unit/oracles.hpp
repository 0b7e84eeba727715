#pragma once

// Slow, independent reimplementations used as test oracles. Nothing here calls the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::vector<std::pair<u64, unsigned>> trial_factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline unsigned omega(u64 n) { return static_cast<unsigned>(trial_factor(n).size()); }

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool squarefree(u64 n) {
    for (u64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

struct Profile {
    unsigned max = 0;
    std::optional<u64> witness;
};

// max omega(d + sign x^2) over x in [x_min, isqrt d] with x % 2 == parity (parity < 0: any).
inline Profile profile(u64 d, int sign, int parity, u64 x_min) {
    Profile p;
    for (u64 x = x_min; x * x <= d; ++x) {
        if (parity >= 0 && static_cast<int>(x % 2) != parity) continue;
        const u64 v = sign > 0 ? d + x * x : d - x * x;
        if (v == 0) continue;
        const unsigned w = omega(v);
        if (!p.witness || w > p.max) {
            p.max = w;
            p.witness = x;
        }
    }
    return p;
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(i64 a, u64 p) {
    u64 base = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
    if (base == 0) return 0;
    u64 r = 1, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = static_cast<u64>((static_cast<unsigned __int128>(r) * base) % p);
        base = static_cast<u64>((static_cast<unsigned __int128>(base) * base) % p);
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// --- forms -----------------------------------------------------------------------------

struct Form {
    i64 a, b, c;
    friend bool operator==(const Form&, const Form&) = default;
};

// Textbook reduction of a positive definite form.
inline Form reduce(Form f) {
    for (;;) {
        // b into (-a, a]
        const i64 two_a = 2 * f.a;
        i64 k = (f.a - f.b) / two_a;
        if (f.a - f.b < 0 && (f.a - f.b) % two_a != 0) --k;
        // shift x -> x + k y
        const i64 nb = f.b + two_a * k;
        f.c = f.a * k * k + f.b * k + f.c;
        f.b = nb;
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

// Every reduced primitive form of discriminant D < 0 by brute force over the box |b| <= a <= c.
inline std::vector<Form> reduced_forms(i64 D) {
    std::vector<Form> out;
    const i64 N = -D;
    for (i64 a = 1; 3 * a * a <= N; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a || (a == c && b < 0)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

// Composition through ideals: (a, b, c) <-> a Z + ((-b + sqrt D) / 2) Z. Elements are kept as
// coordinates (u, v) on the basis {1, w}, w = (s + sqrt D) / 2 with s = D mod 2, and the product
// lattice is brought to Hermite normal form.
inline Form compose_via_ideals(const Form& f, const Form& g, i64 D) {
    const i64 s = ((D % 2) + 2) % 2;
    // (x + y sqrt D) / 2 -> (u, v)
    auto coords = [s](i64 x, i64 y) { return std::array<i64, 2>{(x - y * s) / 2, y}; };
    // product of (x1 + y1 sqrt D)/2 and (x2 + y2 sqrt D)/2 = ((x1 x2 + D y1 y2)/2 + (x1 y2 + x2 y1)/2 sqrt D) / 2
    auto mul = [D](std::array<i64, 2> p, std::array<i64, 2> q) {
        return std::array<i64, 2>{(p[0] * q[0] + D * p[1] * q[1]) / 2, (p[0] * q[1] + p[1] * q[0]) / 2};
    };
    const std::array<i64, 2> a1{2 * f.a, 0}, b1{-f.b, 1}, a2{2 * g.a, 0}, b2{-g.b, 1};
    std::vector<std::array<i64, 2>> gens;
    for (auto p : {a1, b1})
        for (auto q : {a2, b2}) {
            auto r = mul(p, q); // r is (x + y sqrt D)/2 with x, y halved once already
            gens.push_back(coords(r[0], r[1]));
        }
    // HNF on rows (u, v): find C = gcd of v's, then A = gcd of u's in the v = 0 sublattice.
    i64 C = 0, B = 0;
    std::vector<std::array<i64, 2>> rows = gens;
    // Euclid on the v coordinate
    for (;;) {
        std::sort(rows.begin(), rows.end(), [](auto& x, auto& y) { return std::abs(x[1]) > std::abs(y[1]); });
        std::size_t nz = 0;
        for (auto& r : rows)
            if (r[1] != 0) ++nz;
        if (nz <= 1) break;
        auto& big = rows[0];
        auto& small = rows[nz - 1];
        const i64 q = big[1] / small[1];
        big[0] -= q * small[0];
        big[1] -= q * small[1];
    }
    std::array<i64, 2> pivot{0, 0};
    i64 A = 0;
    for (auto& r : rows) {
        if (r[1] != 0)
            pivot = r;
        else
            A = std::gcd(A, std::abs(r[0]));
    }
    if (pivot[1] < 0) pivot = {-pivot[0], -pivot[1]};
    C = pivot[1];
    B = ((pivot[0] % A) + A) % A;
    // Ideal = A Z + (B + C w) Z, content C.
    const i64 a3 = A / C;
    const i64 bq = B / C; // w-coefficient 1 now: bq + w = (2 bq + s + sqrt D) / 2
    const i64 b3 = -(2 * bq + s);
    const i64 c3 = (b3 * b3 - D) / (4 * a3);
    return reduce({a3, b3, c3});
}

// Minimal u in [1, limit] with t^2 - d u^2 = +-k (k = 1 or 4); nullopt when none.
struct Pell {
    u64 t, u;
    int sign;
};

inline std::optional<Pell> pell_brute(u64 d, u64 k, u64 limit) {
    for (u64 u = 1; u <= limit; ++u) {
        const u64 du2 = d * u * u;
        if (du2 >= k) {
            const u64 m = du2 - k;
            const u64 t = isqrt(m);
            if (t * t == m && t > 0) return Pell{t, u, -1};
        }
        const u64 p = du2 + k;
        const u64 t = isqrt(p);
        if (t * t == p) return Pell{t, u, +1};
    }
    return std::nullopt;
}

} // namespace oracle
