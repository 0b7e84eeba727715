#include "qs/scan.hpp"

#include "qs/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace qs {

using ordered_json = nlohmann::ordered_json;

namespace {

u64 parse_u64(std::string_view text, std::string_view what) {
    u64 value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ConfigError("bad " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

DFilter::Residue parse_residue(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw ConfigError("residue must look like R/M, got '" + std::string(text) + "'");
    const u64 r = parse_u64(text.substr(0, slash), "residue");
    const u64 m = parse_u64(text.substr(slash + 1), "modulus");
    if (m == 0) throw ConfigError("modulus must be positive");
    return {r % m, m};
}

bool is_pq(const Factorization& f) {
    return f.factors.size() == 2 && f.factors[0].exponent == 1 && f.factors[1].exponent == 1;
}

bool prime_with(u64 d, const SpfTable* table) {
    if (table != nullptr && table->covers(d)) return d >= 2 && table->spf(d) == d;
    return is_prime(d);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json record_json(const ResultRecord& r) {
    ordered_json j;
    j["d"] = r.d;
    j["max_omega"] = r.max_omega;
    j["witness_x"] = r.witness_x ? ordered_json(*r.witness_x) : ordered_json(nullptr);
    j["pass"] = r.pass;
    return j;
}

ResultRecord record_from(const ordered_json& j) {
    ResultRecord r;
    r.d = j.at("d").get<u64>();
    r.max_omega = j.at("max_omega").get<unsigned>();
    if (!j.at("witness_x").is_null()) r.witness_x = j.at("witness_x").get<u64>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

std::string header_line(const ScanJob& job) {
    ordered_json j;
    j["type"] = "header";
    j["format"] = "qsearch-journal";
    j["version"] = kJournalVersion;
    j["lo"] = job.lo;
    j["hi"] = job.hi;
    j["profile"] = std::string(to_string(job.profile));
    j["threshold"] = job.threshold;
    j["filter"] = job.filter.to_string();
    j["chunk_size"] = job.chunk_size;
    return j.dump();
}

std::string journal_record_line(const ResultRecord& r) {
    ordered_json j;
    j["type"] = "record";
    const ordered_json body = record_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j.dump();
}

std::string chunk_marker_line(u64 index, u64 lo, u64 hi, u64 emitted) {
    ordered_json j;
    j["type"] = "chunk";
    j["index"] = index;
    j["lo"] = lo;
    j["hi"] = hi;
    j["emitted"] = emitted;
    j["ts"] = utc_timestamp();
    return j.dump();
}

struct ChunkResult {
    u64 index = 0;
    u64 lo = 0;
    u64 hi = 0;
    std::vector<ResultRecord> records;
};

void run_chunk(const ScanJob& job, const SpfTable* table, ChunkResult& out) {
    for (u64 d = out.lo; d <= out.hi; ++d) {
        if (!job.filter.accepts(d, table)) continue;
        if (auto r = evaluate(d, job.profile, job.threshold, table)) out.records.push_back(*r);
    }
}

void check_stream(const std::ostream& out, const std::string& path) {
    if (!out) throw ResourceError("write to journal '" + path + "' failed");
}

} // namespace

// ---------------------------------------------------------------- DFilter

bool DFilter::accepts(u64 d, const SpfTable* table) const {
    if (d < min_d || d == 0) return false;
    for (const auto& r : residues)
        if (d % r.modulus != r.residue) return false;
    for (const auto& r : excluded)
        if (d % r.modulus == r.residue) return false;
    if (!squarefree && shape == Shape::any) return true;

    if (shape == Shape::prime && !prime_with(d, table)) return false;
    const Factorization f = factor(d, table);
    if (squarefree && f.squarefree() != *squarefree) return false;
    const bool prime = f.factors.size() == 1 && f.factors[0].exponent == 1;
    switch (shape) {
    case Shape::any: return true;
    case Shape::prime: return prime;
    case Shape::pq: return is_pq(f);
    case Shape::prime_or_pq: return prime || is_pq(f);
    case Shape::composite_non_pq: return !prime && !is_pq(f);
    }
    return false;
}

std::string DFilter::to_string() const {
    std::vector<std::string> parts;
    for (const auto& r : residues) parts.push_back("res=" + std::to_string(r.residue) + "/" + std::to_string(r.modulus));
    for (const auto& r : excluded) parts.push_back("nres=" + std::to_string(r.residue) + "/" + std::to_string(r.modulus));
    if (squarefree) parts.push_back(*squarefree ? "squarefree" : "nonsquarefree");
    switch (shape) {
    case Shape::any: break;
    case Shape::prime: parts.push_back("prime"); break;
    case Shape::pq: parts.push_back("pq"); break;
    case Shape::prime_or_pq: parts.push_back("prime-or-pq"); break;
    case Shape::composite_non_pq: parts.push_back("composite-non-pq"); break;
    }
    if (min_d > 1) parts.push_back("min=" + std::to_string(min_d));
    if (parts.empty()) return "any";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out;
}

DFilter DFilter::parse(std::string_view text) {
    DFilter f;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view tok = text.substr(pos, comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        pos = comma + 1;
        if (tok.empty() || tok == "any") continue;
        if (tok.starts_with("res=")) f.residues.push_back(parse_residue(tok.substr(4)));
        else if (tok.starts_with("nres=")) f.excluded.push_back(parse_residue(tok.substr(5)));
        else if (tok.starts_with("min=")) f.min_d = parse_u64(tok.substr(4), "minimum");
        else if (tok == "odd") f.residues.push_back({1, 2});
        else if (tok == "even") f.residues.push_back({0, 2});
        else if (tok == "squarefree") f.squarefree = true;
        else if (tok == "nonsquarefree") f.squarefree = false;
        else if (tok == "prime") f.shape = Shape::prime;
        else if (tok == "pq") f.shape = Shape::pq;
        else if (tok == "prime-or-pq") f.shape = Shape::prime_or_pq;
        else if (tok == "composite-non-pq") f.shape = Shape::composite_non_pq;
        else throw ConfigError("unknown filter token '" + std::string(tok) + "'");
    }
    return f;
}

// ---------------------------------------------------------------- profiles

bool is_fr(ProfileKind k) {
    return k == ProfileKind::fr_imag_odd || k == ProfileKind::fr_imag_even || k == ProfileKind::fr_real;
}

Sign profile_sign(ProfileKind k) {
    if (k == ProfileKind::m_even_real || k == ProfileKind::fr_real) return Sign::minus;
    return Sign::plus;
}

std::string_view to_string(ProfileKind k) {
    switch (k) {
    case ProfileKind::m_odd: return "m_odd";
    case ProfileKind::m_even: return "m_even";
    case ProfileKind::m_even_real: return "m_even_real";
    case ProfileKind::m_all: return "m_all";
    case ProfileKind::fr_imag_odd: return "fr-imag-odd";
    case ProfileKind::fr_imag_even: return "fr-imag-even";
    case ProfileKind::fr_real: return "fr-real";
    }
    return "?";
}

ProfileKind parse_profile(std::string_view text) {
    for (ProfileKind k : {ProfileKind::m_odd, ProfileKind::m_even, ProfileKind::m_even_real, ProfileKind::m_all,
                          ProfileKind::fr_imag_odd, ProfileKind::fr_imag_even, ProfileKind::fr_real})
        if (text == to_string(k)) return k;
    throw ConfigError("unknown profile '" + std::string(text) +
                      "' (m_odd, m_even, m_even_real, m_all, fr-imag-odd, fr-imag-even, fr-real)");
}

OmegaQuery profile_query(ProfileKind k, u64 d) {
    switch (k) {
    case ProfileKind::m_odd: return m_odd_query(d);
    case ProfileKind::m_even: return m_even_query(d);
    case ProfileKind::m_even_real: return m_even_real_query(d);
    case ProfileKind::m_all: return m_all_from_zero_query(d);
    default: throw DomainError("profile " + std::string(to_string(k)) + " has no omega query");
    }
}

FrVariant profile_variant(ProfileKind k) {
    switch (k) {
    case ProfileKind::fr_imag_odd: return FrVariant::imag_odd;
    case ProfileKind::fr_imag_even: return FrVariant::imag_even;
    case ProfileKind::fr_real: return FrVariant::real;
    default: throw DomainError("profile " + std::string(to_string(k)) + " is not a Frobenius-Rabinowitsch variant");
    }
}

std::optional<ResultRecord> evaluate(u64 d, ProfileKind profile, unsigned threshold, const SpfTable* table) {
    if (is_fr(profile)) {
        const FrVariant v = profile_variant(profile);
        const FrShape s = fr_shape(v);
        if (d % s.modulus != s.residue) return std::nullopt;
        if (!fr_check(d, v, table)) return std::nullopt;
        const FrReport rep = fr_report(d, v, table);
        return ResultRecord{d, rep.max_big_omega, rep.witness_x, true};
    }
    const OmegaQuery q = profile_query(profile, d);
    if (!omega_profile_at_most(q, threshold, table)) return std::nullopt;
    const OmegaReport rep = omega_profile(q, table);
    return ResultRecord{d, rep.max_omega, rep.witness_x, true};
}

// ---------------------------------------------------------------- jobs

void ScanJob::validate() const {
    if (lo == 0) throw ConfigError("lo must be at least 1");
    if (lo > hi) throw ConfigError("lo must not exceed hi");
    if (chunk_size == 0) throw ConfigError("chunk size must be at least 1");
    if (is_fr(profile) && threshold != 1)
        throw ConfigError("fr profiles test 'quotient is 1 or prime' and take threshold 1");
}

u64 ScanJob::chunk_count() const { return (hi - lo) / chunk_size + 1; }

std::pair<u64, u64> ScanJob::chunk_bounds(u64 index) const {
    const u64 first = lo + index * chunk_size;
    const u64 last = (hi - first < chunk_size - 1) ? hi : first + chunk_size - 1;
    return {first, last};
}

u64 default_sieve_limit(const ScanJob& job) {
    const u64 limit = profile_sign(job.profile) == Sign::plus ? 2 * job.hi : job.hi;
    return std::max<u64>(limit, 2);
}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

ScanSummary scan(const ScanJob& job, const ScanOptions& options, const RecordSink& sink, u64 first_chunk) {
    job.validate();
    ScanSummary summary;
    summary.chunks_total = job.chunk_count();
    summary.next_chunk = std::min(first_chunk, summary.chunks_total);

    const SpfTable table(options.sieve_limit.value_or(default_sieve_limit(job)), options.sieve_max_entries);

    std::ofstream journal;
    if (job.journal_path) {
        const auto mode = first_chunk == 0 ? std::ios::out | std::ios::trunc : std::ios::out | std::ios::app;
        journal.open(*job.journal_path, mode);
        if (!journal) throw ResourceError("cannot open journal '" + *job.journal_path + "'");
        if (first_chunk == 0) {
            journal << header_line(job) << '\n' << std::flush;
            check_stream(journal, *job.journal_path);
        }
    }

    const unsigned workers = resolve_workers(options.workers);
    u64 stop = summary.chunks_total;
    if (options.max_chunks) stop = std::min(stop, summary.next_chunk + *options.max_chunks);

    while (summary.next_chunk < stop) {
        const u64 wave = std::min<u64>(workers, stop - summary.next_chunk);
        std::vector<ChunkResult> results(wave);
        for (u64 i = 0; i < wave; ++i) {
            results[i].index = summary.next_chunk + i;
            std::tie(results[i].lo, results[i].hi) = job.chunk_bounds(results[i].index);
        }
        if (wave == 1) {
            run_chunk(job, &table, results[0]);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(wave);
            for (u64 i = 0; i < wave; ++i)
                pool.emplace_back([&job, &table, &results, i] { run_chunk(job, &table, results[i]); });
        }
        // Single writer, ascending chunk order.
        for (const ChunkResult& c : results) {
            if (journal.is_open()) {
                for (const ResultRecord& r : c.records) journal << journal_record_line(r) << '\n';
                journal << chunk_marker_line(c.index, c.lo, c.hi, c.records.size()) << '\n' << std::flush;
                check_stream(journal, *job.journal_path);
            }
            for (const ResultRecord& r : c.records) {
                if (sink) sink(r);
                ++summary.emitted;
            }
            ++summary.next_chunk;
        }
    }
    return summary;
}

std::vector<ResultRecord> scan_collect(const ScanJob& job, const ScanOptions& options) {
    std::vector<ResultRecord> out;
    scan(job, options, [&](const ResultRecord& r) { out.push_back(r); });
    return out;
}

// ---------------------------------------------------------------- records & journal

std::string record_to_jsonl(const ResultRecord& r) { return record_json(r).dump(); }

std::string record_to_csv(const ResultRecord& r) {
    std::ostringstream out;
    out << r.d << ',' << r.max_omega << ',';
    if (r.witness_x) out << *r.witness_x;
    out << ',' << (r.pass ? "true" : "false");
    return out.str();
}

ResultRecord record_from_json_line(std::string_view line) {
    try {
        return record_from(ordered_json::parse(line));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed record: ") + e.what());
    }
}

ResumeState resume(const std::string& journal_path) {
    std::ifstream in(journal_path, std::ios::binary);
    if (!in) throw JournalError("cannot read journal '" + journal_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) break; // no newline: torn tail
        lines.push_back(content.substr(pos, nl - pos));
        pos = nl + 1;
    }

    ResumeState state;
    if (lines.empty()) throw JournalError("journal '" + journal_path + "' has no header");
    try {
        const auto h = ordered_json::parse(lines[0]);
        if (h.at("type") != "header" || h.at("format") != "qsearch-journal")
            throw JournalError("first line of '" + journal_path + "' is not a journal header");
        if (h.at("version").get<int>() != kJournalVersion)
            throw JournalError("unsupported journal version in '" + journal_path + "'");
        state.job.lo = h.at("lo").get<u64>();
        state.job.hi = h.at("hi").get<u64>();
        state.job.profile = parse_profile(h.at("profile").get<std::string>());
        state.job.threshold = h.at("threshold").get<unsigned>();
        state.job.filter = DFilter::parse(h.at("filter").get<std::string>());
        state.job.chunk_size = h.at("chunk_size").get<u64>();
        state.job.journal_path = journal_path;
        state.job.validate();
    } catch (const JournalError&) {
        throw;
    } catch (const std::exception& e) {
        throw JournalError("unreadable journal header in '" + journal_path + "': " + e.what());
    }

    std::vector<ResultRecord> pending;
    std::size_t committed_lines = 1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        ordered_json j;
        try {
            j = ordered_json::parse(lines[i]);
        } catch (const nlohmann::json::exception&) {
            if (i + 1 == lines.size()) break; // torn final record
            throw JournalError("corrupted line " + std::to_string(i + 1) + " in '" + journal_path + "'");
        }
        const std::string type = j.value("type", "");
        if (type == "record") {
            pending.push_back(record_from(j));
        } else if (type == "chunk") {
            if (j.at("index").get<u64>() != state.next_chunk)
                throw JournalError("chunk markers out of order in '" + journal_path + "'");
            state.records.insert(state.records.end(), pending.begin(), pending.end());
            pending.clear();
            ++state.next_chunk;
            committed_lines = i + 1;
        } else {
            throw JournalError("unknown line type on line " + std::to_string(i + 1) + " of '" + journal_path + "'");
        }
    }
    in.close();

    if (committed_lines != lines.size() || pos != content.size()) {
        const std::string tmp = journal_path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            for (std::size_t i = 0; i < committed_lines; ++i) out << lines[i] << '\n';
            out.flush();
            if (!out) throw ResourceError("cannot rewrite journal '" + journal_path + "'");
        }
        std::filesystem::rename(tmp, journal_path);
    }
    return state;
}

} // namespace qs
