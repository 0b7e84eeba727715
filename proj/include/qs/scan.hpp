#pragma once

#include "qs/arith.hpp"
#include "qs/omega_profile.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qs {

enum class Shape { any, prime, pq, prime_or_pq, composite_non_pq };

/// Conjunction of conditions on d. Text form is a comma-separated token list:
///   res=R/M      d = R (mod M)          nres=R/M   d != R (mod M)
///   odd, even    shorthands for res=1/2, res=0/2
///   squarefree   nonsquarefree          min=N      d >= N
///   prime  pq  prime-or-pq  composite-non-pq  (shape of the factorization; pq = two distinct primes)
///   any          no condition
struct DFilter {
    struct Residue {
        u64 residue;
        u64 modulus;
        friend bool operator==(const Residue&, const Residue&) = default;
    };
    std::vector<Residue> residues;
    std::vector<Residue> excluded;
    std::optional<bool> squarefree;
    Shape shape = Shape::any;
    u64 min_d = 1;

    bool accepts(u64 d, const SpfTable* table = nullptr) const;
    std::string to_string() const;
    static DFilter parse(std::string_view text);

    friend bool operator==(const DFilter&, const DFilter&) = default;
};

enum class ProfileKind { m_odd, m_even, m_even_real, m_all, fr_imag_odd, fr_imag_even, fr_real };

bool is_fr(ProfileKind k);
Sign profile_sign(ProfileKind k);
std::string_view to_string(ProfileKind k);
ProfileKind parse_profile(std::string_view text);
OmegaQuery profile_query(ProfileKind k, u64 d); // omega profiles only
FrVariant profile_variant(ProfileKind k);       // fr profiles only

/// One passing d. For fr-* profiles max_omega holds the largest count of prime factors
/// (with multiplicity) among the quotients, so "quotient is 1 or prime" reads max_omega <= 1.
struct ResultRecord {
    u64 d = 0;
    unsigned max_omega = 0;
    std::optional<u64> witness_x;
    bool pass = false;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

// Full record for d, or nothing when d fails the profile/threshold test.
// d outside an fr profile's residue class never passes.
std::optional<ResultRecord> evaluate(u64 d, ProfileKind profile, unsigned threshold, const SpfTable* table);

struct ScanJob {
    u64 lo = 1;
    u64 hi = 1;
    ProfileKind profile = ProfileKind::m_odd;
    unsigned threshold = 2;
    DFilter filter;
    u64 chunk_size = 10'000;
    std::optional<std::string> journal_path;

    void validate() const; // ConfigError on lo > hi, lo == 0, chunk_size == 0, fr threshold != 1
    u64 chunk_count() const;
    std::pair<u64, u64> chunk_bounds(u64 index) const;
};

struct ScanOptions {
    unsigned workers = 1;                // 0 = hardware concurrency
    std::optional<u64> sieve_limit;      // overrides the automatic 2*hi (or hi) sizing
    std::optional<u64> max_chunks;       // stop after this many chunks (staged runs)
    u64 sieve_max_entries = SpfTable::kDefaultMaxEntries;
};

u64 default_sieve_limit(const ScanJob& job);
unsigned resolve_workers(unsigned requested);

struct ScanSummary {
    u64 chunks_total = 0;
    u64 next_chunk = 0; // first chunk not yet processed
    u64 emitted = 0;
    bool complete() const { return next_chunk == chunks_total; }
};

using RecordSink = std::function<void(const ResultRecord&)>;

/// Scans chunks [first_chunk, chunk_count) with a worker pool and hands passing records to
/// sink in ascending d. With a journal path set, records and chunk markers are appended to
/// it (a fresh scan, first_chunk == 0, truncates the file and writes the header).
ScanSummary scan(const ScanJob& job, const ScanOptions& options, const RecordSink& sink, u64 first_chunk = 0);

std::vector<ResultRecord> scan_collect(const ScanJob& job, const ScanOptions& options = {});

// --- journal -------------------------------------------------------------------------

inline constexpr int kJournalVersion = 1;

std::string record_to_jsonl(const ResultRecord& r);     // {"d":..,"max_omega":..,"witness_x":..,"pass":..}
std::string record_to_csv(const ResultRecord& r);       // d,max_omega,witness_x,pass
inline constexpr std::string_view kRecordCsvHeader = "d,max_omega,witness_x,pass";
ResultRecord record_from_json_line(std::string_view line);

/// Parsed journal: the job, the records of every completed chunk, and where to continue.
struct ResumeState {
    ScanJob job;
    std::vector<ResultRecord> records;
    u64 next_chunk = 0;
    bool finished() const { return next_chunk == job.chunk_count(); }
};

// JournalError when the header is missing or unreadable. A torn final line and the
// records of an unfinished chunk are dropped; the file is rewritten without them.
ResumeState resume(const std::string& journal_path);

} // namespace qs
