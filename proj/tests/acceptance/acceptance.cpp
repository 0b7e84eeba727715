// Acceptance gate: one PASS/FAIL line per criterion. Every comparison is exact.

#include "unit/oracles.hpp"

#include "qs/forms.hpp"
#include "qs/real_quadratic.hpp"
#include "qs/scan.hpp"
#include "qs/theorems.hpp"
#include "qs/witnesses.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qs;

namespace {

// Lists are integer identities: no value may be missing or spurious.
constexpr std::size_t kListTolerance = 0;
// Single-threaded wall-clock budget for the T1.1 run at 10^6.
constexpr double kT11BudgetSeconds = 120.0;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes; // printed under the criterion line
};

std::string join(const std::vector<u64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// Runs verify and compares against a list restated here, independent of the embedded data.
bool verify_against(const std::string& id, u64 bound, const std::vector<u64>& expected, Outcome& o) {
    const VerificationReport r = verify(lookup_theorem(id), bound);
    const bool exact = r.missing.size() + r.spurious.size() <= kListTolerance && r.computed == expected;
    std::ostringstream s;
    s << id << " @" << bound << ": " << r.computed.size() << " values";
    if (!r.missing.empty()) s << ", missing {" << join(r.missing) << "}";
    if (!r.spurious.empty()) s << ", spurious {" << join(r.spurious) << "}";
    if (r.computed != expected) s << ", differs from restated list";
    o.notes.push_back(s.str());
    o.pass = o.pass && exact && r.matched;
    return exact;
}

Outcome criterion_1() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    verify_against("T1.1", 1'000'000, {1, 9, 25, 27, 49, 63, 135, 175, 207, 343}, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.pass = o.pass && secs <= kT11BudgetSeconds;
    char note[96];
    std::snprintf(note, sizeof note, "single worker, %.2f s (budget %.0f s)", secs, kT11BudgetSeconds);
    o.notes.push_back(note);
    o.detail = "verify T1.1 --bound 1000000 gives the 10 listed values";
    return o;
}

Outcome criterion_2() {
    Outcome o;
    verify_against("T1.2", 1'000'000, {3, 5, 11, 13, 17, 19, 37, 43, 67, 73, 97, 163, 193}, o);
    o.detail = "verify T1.2 --bound 1000000 gives the 13 listed primes";
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const std::vector<u64> primes{7, 23, 31, 47, 79, 103, 127, 151, 223, 463, 487, 823, 1087, 1423};
    const std::vector<u64> pq{15, 39, 55, 247, 583};
    std::vector<u64> all(primes);
    all.insert(all.end(), pq.begin(), pq.end());
    std::sort(all.begin(), all.end());
    verify_against("T1.3", 1'000'000, all, o);
    const VerificationReport r = verify(lookup_theorem("T1.3"), 1'000'000);
    std::size_t n_prime = 0, n_pq = 0;
    for (u64 d : r.computed) (oracle::is_prime(d) ? n_prime : n_pq)++;
    const bool caveat = r.caveat.find("at most one possible exception") != std::string::npos;
    o.pass = o.pass && n_prime == 14 && n_pq == 5 && caveat;
    o.notes.push_back(std::to_string(n_prime) + " primes + " + std::to_string(n_pq) + " pq values; caveat " +
                      (caveat ? "carried: \"" + r.caveat + "\"" : "MISSING"));
    o.detail = "verify T1.3 --bound 1000000 gives 14 primes + 5 pq values with the exception caveat";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    verify_against("T1.4", 1'000'000, {2, 6, 10, 14, 22, 34, 46, 58, 82, 142}, o);
    verify_against("T1.5", 1'000'000, {2, 6, 10, 14, 22, 30, 34, 46, 58, 70, 82, 142}, o);
    verify_against("T1.6", lookup_theorem("T1.6").default_bound, {18}, o);
    verify_against("T1.8", lookup_theorem("T1.8").default_bound, {18, 50, 54, 90, 98}, o);
    o.detail = "T1.4, T1.5, T1.6 and T1.8 reproduce exactly";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    struct Case {
        const char* id;
        u64 bound;
        std::size_t count;
        u64 max;
    };
    for (const Case& c : {Case{"C1", 1'000'000, 202, 288'502}, Case{"C2", 1'000'000, 44, 48'778},
                          Case{"C3", 10'000, 16, 398}}) {
        const TheoremSpec& spec = lookup_theorem(c.id);
        const VerificationReport r = verify(spec, c.bound);
        const bool ok = r.matched && r.computed.size() == c.count && !r.computed.empty() && r.computed.back() == c.max &&
                        r.missing.size() + r.spurious.size() <= kListTolerance;
        o.pass = o.pass && ok;
        o.notes.push_back(std::string(c.id) + " @" + std::to_string(c.bound) + ": " + std::to_string(r.computed.size()) +
                          " values, max " + (r.computed.empty() ? "-" : std::to_string(r.computed.back())) +
                          (ok ? "" : " (expected " + std::to_string(c.count) + ", max " + std::to_string(c.max) + ")"));
    }
    o.notes.push_back("bounded reproduction only; completeness of the conjectured lists is not certified");
    o.detail = "C1 (202, max 288502), C2 (44, max 48778), C3 (16, max 398) reproduce exactly";
    return o;
}

Outcome criterion_6() {
    Outcome o;
    auto check = [&o](bool ok, const std::string& what) {
        o.pass = o.pass && ok;
        if (!ok) o.notes.push_back("failed: " + what);
    };
    auto h_imag = [](i64 D) {
        const u64 h = class_number_imaginary(QuadDiscriminant(D));
        return h == oracle::reduced_forms(D).size() ? h : 0; // 0 flags a disagreement with the oracle count
    };
    check(h_imag(-163) == 1, "h(-163) = 1");
    check(h_imag(-232) == 2, "h(-232) = 2");
    const ClassGroupStructure c68 = class_group_structure(QuadDiscriminant(-68));
    check(h_imag(-68) == 4 && c68.elementary_divisors == std::vector<u64>{4}, "h(-68) = 4, divisors (4)");
    const ClassGroupStructure c120 = class_group_structure(QuadDiscriminant(-120));
    check(c120.h == 4 && c120.elementary_divisors == std::vector<u64>{2, 2}, "Cl(-120) = (2,2)");
    check(h_imag(-103) == 5 && order_of_prime_form(QuadDiscriminant(-103), 2) == 5,
          "h(-103) = 5 with the norm-2 class of order 5");
    std::vector<u64> bad;
    for (u64 d : {13, 21, 29, 37, 53, 77, 101, 173, 197, 293, 437, 677})
        if (class_number_real(discriminant_of(d, FieldKind::real)) != 1) bad.push_back(d);
    check(bad.empty(), "h_d = 1 on the real list, failing at {" + join(bad) + "}");
    check(class_number_real(QuadDiscriminant(40)) == 2, "h(40) = 2");
    if (o.pass)
        o.notes.push_back("h(-163)=1, h(-232)=2, h(-68)=4 (4), Cl(-120)=(2,2), h(-103)=5 with ord[norm 2]=5, "
                          "h_d=1 on 12 real values, h(40)=2");
    o.detail = "class-number spot checks (imaginary and real)";
    return o;
}

Outcome criterion_7() {
    Outcome o;
    for (const char* id : {"T1.2", "T1.3", "T1.4", "T1.5", "C3"}) {
        const auto checks = check_class_implications(id);
        std::size_t failed = 0;
        for (const auto& c : checks)
            if (!c.holds) {
                ++failed;
                o.notes.push_back(std::string(id) + " d=" + std::to_string(c.d) + ": " + c.property + " fails [" +
                                  c.detail + "]");
            }
        o.pass = o.pass && failed == 0 && !checks.empty();
        if (failed == 0) o.notes.push_back(std::string(id) + ": " + std::to_string(checks.size()) + " checks hold");
    }
    o.detail = "class-group implications for T1.2, T1.3, T1.4, T1.5 and C3 (h(4d) | 16)";
    return o;
}

Outcome criterion_8() {
    Outcome o;
    std::vector<u64> odd_bad, even_bad, even_bad_from_6;
    for (u64 d = 3; d <= 10'000; d += 4) {
        const bool lhs = fr_check(d, FrVariant::imag_odd);
        const bool rhs = oracle::is_prime(d) && class_number_imaginary(QuadDiscriminant(-static_cast<i64>(d))) == 1;
        if (lhs != rhs) odd_bad.push_back(d);
    }
    for (u64 d = 2; d <= 10'000; d += 4) {
        const bool lhs = fr_check(d, FrVariant::imag_even);
        const bool rhs =
            oracle::is_prime(d / 2) && class_number_imaginary(QuadDiscriminant(-4 * static_cast<i64>(d))) == 2;
        if (lhs != rhs) {
            even_bad.push_back(d);
            if (d >= 6) even_bad_from_6.push_back(d);
        }
    }
    o.pass = odd_bad.empty() && even_bad.empty();
    o.notes.push_back("imag_odd on d = 3 mod 4 in [3, 10^4]: " + std::to_string(odd_bad.size()) + " counterexamples" +
                      (odd_bad.empty() ? "" : " {" + join(odd_bad) + "}"));
    o.notes.push_back("imag_even on d = 2 mod 4 in [2, 10^4]: " + std::to_string(even_bad.size()) + " counterexamples" +
                      (even_bad.empty() ? "" : " {" + join(even_bad) + "}"));
    if (!even_bad.empty() && even_bad.front() == 2)
        o.notes.push_back("  d = 2: the only quotient is (2 + 0)/2 = 1, so the test passes, but d/2 = 1 is not prime "
                          "and h(-8) = 1");
    o.notes.push_back("info: imag_even on [6, 10^4]: " + std::to_string(even_bad_from_6.size()) + " counterexamples");
    o.detail = "Frobenius-Rabinowitsch equivalences over d <= 10^4 with zero counterexamples";
    return o;
}

// --- criterion 9 ----------------------------------------------------------------------

bool sieve_matches_trial_division() {
    const SpfTable t = build_spf(100'000);
    for (u64 n = 2; n <= 100'000; ++n) {
        const Factorization f = factor(n, &t);
        const auto o = oracle::trial_factor(n);
        if (f.factors.size() != o.size() || omega(n, &t) != oracle::omega(n)) return false;
        for (std::size_t i = 0; i < o.size(); ++i)
            if (f.factors[i].prime != o[i].first || f.factors[i].exponent != o[i].second) return false;
    }
    return true;
}

bool reduction_unique() {
    for (i64 D = -3; D >= -5000; --D) {
        const i64 r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        const std::vector<Form> reduced = reduced_forms_imaginary(QuadDiscriminant(D));
        if (reduced.size() != oracle::reduced_forms(D).size()) return false;
        std::set<Form> distinct(reduced.begin(), reduced.end());
        if (distinct.size() != reduced.size()) return false;
        for (const auto& f : reduced) {
            if (reduce_imaginary(f) != f) return false;
            for (i64 k = -2; k <= 2; ++k) {
                const Form g{f.a, f.b + 2 * f.a * k, f.a * k * k + f.b * k + f.c};
                const Form h{g.c, -g.b, g.a};
                if (reduce_imaginary(g) != f || reduce_imaginary(h) != f) return false;
            }
        }
    }
    return true;
}

bool group_laws() {
    for (i64 D : {-103LL, -120LL, -232LL, -455LL}) {
        const QuadDiscriminant Dq(D);
        const std::vector<Form> forms = reduced_forms_imaginary(Dq);
        const Form e = principal_form(Dq);
        for (const auto& f : forms) {
            if (compose(e, f) != f || compose(f, Form{f.a, -f.b, f.c}) != e) return false;
            for (const auto& g : forms) {
                if (compose(f, g) != compose(g, f)) return false;
                const auto viaIdeals = oracle::compose_via_ideals({f.a, f.b, f.c}, {g.a, g.b, g.c}, D);
                if (compose(f, g) != Form{viaIdeals.a, viaIdeals.b, viaIdeals.c}) return false;
                for (const auto& h : forms)
                    if (compose(compose(f, g), h) != compose(f, compose(g, h))) return false;
            }
        }
    }
    return true;
}

std::size_t span_size(const std::vector<Form>& gens, const QuadDiscriminant& D) {
    std::set<Form> seen{principal_form(D)};
    std::vector<Form> frontier{principal_form(D)};
    while (!frontier.empty()) {
        const Form f = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            const Form h = compose(f, g);
            if (seen.insert(h).second) frontier.push_back(h);
        }
    }
    return seen.size();
}

bool genus_count() {
    for (i64 D = -3; D >= -3000; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        const QuadDiscriminant Dq(D);
        const GenusData g = genus_data(Dq);
        if (g.two_rank + 1 != oracle::omega(static_cast<u64>(-D))) return false;
        u64 small = 0;
        for (const auto& f : reduced_forms_imaginary(Dq))
            if (form_order(f) <= 2) ++small;
        if (small != (u64{1} << g.two_rank)) return false;
    }
    return true;
}

bool generation_by_small_primes() {
    for (i64 D = -3; D >= -3000; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        const QuadDiscriminant Dq(D);
        std::vector<Form> gens;
        for (u64 ell = 2; 3 * ell * ell <= static_cast<u64>(-D); ++ell)
            if (oracle::is_prime(ell) && splitting_type(Dq, ell) != Splitting::inert)
                gens.push_back(reduce_imaginary(prime_form(Dq, ell)));
        if (span_size(gens, Dq) != class_number_imaginary(Dq)) return false;
    }
    return true;
}

bool generation_by_ramified_two() {
    for (u64 d = 1; d <= 1500; ++d) {
        if (!(d % 4 == 1 || d % 4 == 2) || !oracle::squarefree(d)) continue;
        const QuadDiscriminant Dq = discriminant_of(d, FieldKind::imaginary);
        std::vector<Form> gens{reduce_imaginary(prime_form(Dq, 2))};
        for (u64 ell = 3; ell * ell <= d; ell += 2)
            if (oracle::is_prime(ell) && splitting_type(Dq, ell) != Splitting::inert)
                gens.push_back(reduce_imaginary(prime_form(Dq, ell)));
        if (span_size(gens, Dq) != class_number_imaginary(Dq)) return false;
    }
    return true;
}

bool existence_below_1e5() {
    for (u64 p = 7; p < 100'000; ++p) {
        if ((p % 8 != 1 && p % 8 != 7) || !oracle::is_prime(p)) continue;
        const XYPair s = solve_p_x2_2y2(p);
        if (p + s.x * s.x != 2 * s.y * s.y || s.x * s.x >= p || s.y * s.y >= p) return false;
    }
    return true;
}

ScanJob sample_job(ProfileKind p, const char* filter, u64 hi) {
    ScanJob j;
    j.lo = 1;
    j.hi = hi;
    j.profile = p;
    j.filter = DFilter::parse(filter);
    return j;
}

bool chunk_independence() {
    for (ProfileKind p : {ProfileKind::m_odd, ProfileKind::m_even, ProfileKind::m_even_real}) {
        ScanJob j = sample_job(p, "any", 30'000);
        const auto reference = scan_collect(j);
        for (u64 chunk : {1ULL, 100ULL, 10'000ULL})
            for (unsigned workers : {1u, 2u, 4u}) {
                j.chunk_size = chunk;
                ScanOptions o;
                o.workers = workers;
                if (scan_collect(j, o) != reference) return false;
            }
    }
    return true;
}

bool kill_and_resume() {
    const auto dir = std::filesystem::temp_directory_path() / "qs-acceptance-journal";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "job.jsonl").string();
    bool ok = true;
    ScanJob j = sample_job(ProfileKind::m_odd, "odd", 20'000);
    j.chunk_size = 1000;
    const auto reference = scan_collect(j);
    j.journal_path = path;
    for (u64 prefix = 0; prefix <= j.chunk_count() && ok; ++prefix) {
        ScanOptions o;
        o.max_chunks = prefix;
        scan(j, o, nullptr);
        // Tear the last line too, as a killed writer would.
        if (prefix % 3 == 1) {
            const auto size = std::filesystem::file_size(path);
            std::filesystem::resize_file(path, size - 5);
        }
        ResumeState st = resume(path);
        std::vector<ResultRecord> all = st.records;
        scan(st.job, {}, [&](const ResultRecord& r) { all.push_back(r); }, st.next_chunk);
        ok = all == reference;
    }
    std::filesystem::remove_all(dir);
    return ok;
}

Outcome criterion_9() {
    Outcome o;
    const std::pair<const char*, std::function<bool()>> suites[] = {
        {"sieve vs trial-division omega on [2, 1e5]", sieve_matches_trial_division},
        {"reduction uniqueness for |D| <= 5000", reduction_unique},
        {"group laws on -103, -120, -232, -455 (with ideal-product oracle)", group_laws},
        {"genus count 2^two_rank for |D| <= 3000", genus_count},
        {"prime forms of norm <= sqrt(|D|/3) generate, |D| <= 3000", generation_by_small_primes},
        {"ramified norm-2 form with odd primes <= sqrt d generate, d <= 1500", generation_by_ramified_two},
        {"p + x^2 = 2y^2 solvable for p = +-1 mod 8 below 1e5", existence_below_1e5},
        {"scan chunk-size and worker independence", chunk_independence},
        {"kill-and-resume equivalence (with torn tails)", kill_and_resume},
    };
    for (const auto& [name, fn] : suites) {
        const bool ok = fn();
        o.pass = o.pass && ok;
        o.notes.push_back(std::string(ok ? "ok   " : "FAIL ") + name);
    }
    o.detail = "property suites";
    return o;
}

} // namespace

int main() {
    const std::pair<int, std::function<Outcome()>> criteria[] = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
        {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
    };
    int failed = 0;
    for (const auto& [n, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %d: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str(), secs);
        for (const auto& note : o.notes) std::printf("        %s\n", note.c_str());
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
