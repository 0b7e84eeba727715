#pragma once

#include "qs/scan.hpp"

#include <string>
#include <vector>

namespace qs {

/// One value-list statement: every d <= bound passing `filter` whose profile maximum is at
/// most `threshold` must be exactly `expected`.
struct TheoremSpec {
    std::string id;
    std::string statement;
    DFilter filter;
    ProfileKind profile = ProfileKind::m_odd;
    unsigned threshold = 2;
    std::vector<u64> expected;
    u64 default_bound = 1'000'000;
    std::string caveat;
    bool conjecture = false;
};

// Static value lists, each checked against its embedded length and FNV-1a checksum
// on first use (InvariantViolation on mismatch).
const std::vector<TheoremSpec>& builtin_theorems();
const TheoremSpec& lookup_theorem(std::string_view id); // DomainError for unknown ids

// FNV-1a 64 over the comma-joined decimal values.
u64 value_list_checksum(const std::vector<u64>& values);

struct VerificationReport {
    std::string id;
    u64 bound_used = 0;
    std::vector<u64> computed;
    std::vector<u64> missing;  // expected - computed
    std::vector<u64> spurious; // computed - expected
    bool matched = false;
    double elapsed_ms = 0;
    std::string caveat;
};

struct VerifyOptions {
    unsigned workers = 1;
    u64 chunk_size = 10'000;
    std::optional<u64> sieve_limit;
};

// ConfigError when bound < max(expected).
VerificationReport verify(const TheoremSpec& spec, std::optional<u64> bound = std::nullopt,
                          const VerifyOptions& options = {});

struct ImplicationCheck {
    u64 d = 0;
    std::string property;
    bool holds = false;
    std::string detail;
};

// Ids: T1.2, T1.3, T1.3-p and T1.3-pq (the per-shape class-number bounds), T1.4, T1.5,
// T1.7 (evaluated on the C3 list), C3, FR1, FR2, FR-real.
std::vector<ImplicationCheck> check_class_implications(std::string_view id);
std::vector<std::string> implication_ids();

} // namespace qs
