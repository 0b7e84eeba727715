#include "cli.hpp"

#include "qs/errors.hpp"
#include "qs/forms.hpp"
#include "qs/real_quadratic.hpp"
#include "qs/scan.hpp"
#include "qs/theorems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace qs::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { human, csv, jsonl };

struct Globals {
    std::string format = "human";
    unsigned workers = 0;
    std::optional<u64> sieve_limit;

    Format fmt() const {
        if (format == "csv") return Format::csv;
        if (format == "jsonl") return Format::jsonl;
        return Format::human;
    }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

template <class Range, class F>
std::string join(const Range& r, const std::string& sep, F&& fn) {
    std::string s;
    bool first = true;
    for (const auto& v : r) {
        if (!first) s += sep;
        s += fn(v);
        first = false;
    }
    return s;
}

std::string join_u64(const std::vector<u64>& v, const std::string& sep = " ") {
    return join(v, sep, [](u64 x) { return std::to_string(x); });
}

std::string join_forms(const std::vector<Form>& v) {
    return join(v, " ", [](const Form& f) { return f.to_string(); });
}

ordered_json forms_json(const std::vector<Form>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& f : v) a.push_back({f.a, f.b, f.c});
    return a;
}

ordered_json opt_json(const std::optional<u64>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); }
std::string opt_str(const std::optional<u64>& x, const char* none = "") { return x ? std::to_string(*x) : none; }

std::string structure_name(const std::vector<u64>& divisors) {
    if (divisors.empty()) return "trivial";
    return join(divisors, " x ", [](u64 x) { return "C" + std::to_string(x); });
}

std::string big(const BigInt& x) { return x.str(); }

// --- omega --------------------------------------------------------------------------

struct OmegaArgs {
    u64 d = 0;
    std::string parity = "odd";
    std::string sign = "plus";
    std::optional<u64> x_min;
};

int cmd_omega(const OmegaArgs& a, const Globals& g, std::ostream& out) {
    if (a.d == 0) throw DomainError("d must be positive");
    OmegaQuery q;
    q.d = a.d;
    q.parity = parse_parity(a.parity);
    q.sign = parse_sign(a.sign);
    q.x_min = a.x_min.value_or(q.parity == Parity::odd ? 1 : q.parity == Parity::even ? 2 : 0);
    const OmegaReport r = omega_profile(q);
    std::optional<u64> value;
    if (r.witness_x) value = profile_value(q, *r.witness_x);
    const std::string fact = r.witness_factorization ? r.witness_factorization->to_string() : "";
    const char* sign_name = q.sign == Sign::plus ? "plus" : "minus";

    switch (g.fmt()) {
    case Format::human:
        out << "d          " << q.d << '\n'
            << "values     d " << (q.sign == Sign::plus ? '+' : '-') << " x^2, x " << to_string(q.parity) << " in ["
            << q.x_min << ", " << isqrt(q.d) << "]\n"
            << "max_omega  " << r.max_omega << '\n'
            << "witness_x  " << (r.witness_x ? std::to_string(*r.witness_x) + "  (" + std::to_string(*value) + " = " + fact + ")"
                                             : std::string("none (empty range)"))
            << '\n'
            << "evaluated  " << r.evaluated_count << '\n';
        break;
    case Format::csv:
        out << "d,sign,parity,x_min,max_omega,witness_x,witness_value,factorization,evaluated\n"
            << q.d << ',' << sign_name << ',' << to_string(q.parity) << ',' << q.x_min << ',' << r.max_omega << ','
            << opt_str(r.witness_x) << ',' << opt_str(value) << ',' << csv_field(fact) << ',' << r.evaluated_count
            << '\n';
        break;
    case Format::jsonl: {
        ordered_json j;
        j["d"] = q.d;
        j["sign"] = sign_name;
        j["parity"] = to_string(q.parity);
        j["x_min"] = q.x_min;
        j["max_omega"] = r.max_omega;
        j["witness_x"] = opt_json(r.witness_x);
        j["witness_value"] = opt_json(value);
        j["factorization"] = r.witness_factorization ? ordered_json(fact) : ordered_json(nullptr);
        j["evaluated"] = r.evaluated_count;
        out << j.dump() << '\n';
        break;
    }
    }
    return kOk;
}

// --- class groups ---------------------------------------------------------------------

int cmd_classgroup(i64 disc, const Globals& g, std::ostream& out) {
    const QuadDiscriminant D(disc);
    if (!is_fundamental_discriminant(disc))
        throw DomainError("D = " + std::to_string(disc) + " is not a fundamental discriminant");
    const ClassGroupStructure s = class_group_structure(D);
    const std::vector<Form> forms = D.imaginary() ? reduced_forms_imaginary(D) : std::vector<Form>{};
    const std::optional<std::vector<u64>>& divs = s.elementary_divisors;

    switch (g.fmt()) {
    case Format::human:
        out << "D           " << disc << '\n' << "h           " << s.h << '\n';
        if (divs) {
            out << "structure   " << structure_name(*divs) << '\n'
                << "generators  " << (s.generators.empty() ? "-" : join_forms(s.generators)) << '\n'
                << "forms       " << join_forms(forms) << '\n';
        }
        break;
    case Format::csv:
        out << "D,h,elementary_divisors,generators,forms\n"
            << disc << ',' << s.h << ',' << (divs ? join_u64(*divs) : "") << ','
            << csv_field(join_forms(s.generators)) << ',' << csv_field(join_forms(forms)) << '\n';
        break;
    case Format::jsonl: {
        ordered_json j;
        j["D"] = disc;
        j["h"] = s.h;
        j["elementary_divisors"] = divs ? ordered_json(*divs) : ordered_json(nullptr);
        j["generators"] = forms_json(s.generators);
        j["forms"] = forms_json(forms);
        out << j.dump() << '\n';
        break;
    }
    }
    return kOk;
}

std::string unit_text(const PellSolution& u) {
    std::string s = big(u.t) + " + " + big(u.u) + " sqrt(" + std::to_string(u.d) + ")";
    return u.denominator == 1 ? s : "(" + s + ")/" + std::to_string(u.denominator);
}

int cmd_realclass(i64 disc, const Globals& g, std::ostream& out) {
    if (disc <= 0) throw DomainError("realclass needs D > 0");
    const QuadDiscriminant D(disc);
    const u64 h = class_number_real(D);
    const u64 narrow = narrow_class_number(D);
    const u64 d = disc % 4 == 0 ? static_cast<u64>(disc) / 4 : static_cast<u64>(disc);
    const PellSolution eps = fundamental_unit(d);

    switch (g.fmt()) {
    case Format::human:
        out << "D          " << disc << '\n'
            << "h          " << h << '\n'
            << "h_narrow   " << narrow << '\n'
            << "unit       " << unit_text(eps) << '\n'
            << "unit_norm  " << (eps.norm_sign > 0 ? "+1" : "-1") << '\n';
        break;
    case Format::csv:
        out << "D,h,h_narrow,unit_t,unit_u,unit_denominator,unit_norm\n"
            << disc << ',' << h << ',' << narrow << ',' << big(eps.t) << ',' << big(eps.u) << ',' << eps.denominator
            << ',' << eps.norm_sign << '\n';
        break;
    case Format::jsonl: {
        ordered_json j;
        j["D"] = disc;
        j["h"] = h;
        j["h_narrow"] = narrow;
        j["unit_t"] = big(eps.t);
        j["unit_u"] = big(eps.u);
        j["unit_denominator"] = eps.denominator;
        j["unit_norm"] = eps.norm_sign;
        out << j.dump() << '\n';
        break;
    }
    }
    return kOk;
}

int cmd_unit(u64 d, const Globals& g, std::ostream& out) {
    const PellSolution eps = fundamental_unit(d);
    switch (g.fmt()) {
    case Format::human:
        out << "d     " << d << '\n'
            << "unit  " << unit_text(eps) << '\n'
            << "norm  " << (eps.norm_sign > 0 ? "+1" : "-1") << '\n';
        break;
    case Format::csv:
        out << "d,t,u,denominator,norm\n"
            << d << ',' << big(eps.t) << ',' << big(eps.u) << ',' << eps.denominator << ',' << eps.norm_sign << '\n';
        break;
    case Format::jsonl: {
        ordered_json j;
        j["d"] = d;
        j["t"] = big(eps.t);
        j["u"] = big(eps.u);
        j["denominator"] = eps.denominator;
        j["norm"] = eps.norm_sign;
        out << j.dump() << '\n';
        break;
    }
    }
    return kOk;
}

int cmd_fr(u64 d, const std::string& variant_name, const Globals& g, std::ostream& out) {
    const FrVariant v = parse_fr_variant(variant_name);
    const FrReport r = fr_report(d, v);
    switch (g.fmt()) {
    case Format::human:
        out << "d              " << d << '\n'
            << "variant        " << to_string(v) << '\n'
            << "holds          " << (r.holds ? "yes" : "no") << '\n'
            << "max_big_omega  " << r.max_big_omega << '\n'
            << "witness_x      " << opt_str(r.witness_x, "none (empty range)") << '\n'
            << "evaluated      " << r.evaluated_count << '\n';
        break;
    case Format::csv:
        out << "d,variant,holds,max_big_omega,witness_x,evaluated\n"
            << d << ',' << to_string(v) << ',' << (r.holds ? "true" : "false") << ',' << r.max_big_omega << ','
            << opt_str(r.witness_x) << ',' << r.evaluated_count << '\n';
        break;
    case Format::jsonl: {
        ordered_json j;
        j["d"] = d;
        j["variant"] = to_string(v);
        j["holds"] = r.holds;
        j["max_big_omega"] = r.max_big_omega;
        j["witness_x"] = opt_json(r.witness_x);
        j["evaluated"] = r.evaluated_count;
        out << j.dump() << '\n';
        break;
    }
    }
    return kOk;
}

// --- theorems -------------------------------------------------------------------------

struct VerifyArgs {
    std::string id;
    std::optional<u64> bound;
    u64 chunk = 10'000;
    bool timing = false;
};

int verify_one(const TheoremSpec& spec, const VerifyArgs& a, const Globals& g, std::ostream& out, bool csv_header) {
    VerifyOptions vo;
    vo.workers = g.workers;
    vo.chunk_size = a.chunk;
    vo.sieve_limit = g.sieve_limit;
    const VerificationReport r = verify(spec, a.bound, vo);

    switch (g.fmt()) {
    case Format::human:
        out << r.id << "  bound " << r.bound_used << "  " << (r.matched ? "MATCH" : "MISMATCH") << "  computed "
            << r.computed.size() << "  expected " << spec.expected.size() << "  missing " << r.missing.size()
            << "  spurious " << r.spurious.size() << '\n'
            << "  computed: " << join_u64(r.computed) << '\n';
        if (!r.missing.empty()) out << "  missing:  " << join_u64(r.missing) << '\n';
        if (!r.spurious.empty()) out << "  spurious: " << join_u64(r.spurious) << '\n';
        out << "  note: " << r.caveat << '\n';
        if (a.timing) out << "  elapsed_ms: " << std::fixed << std::setprecision(1) << r.elapsed_ms << '\n';
        break;
    case Format::csv: {
        if (csv_header) out << "id,d,status\n";
        std::vector<std::pair<u64, const char*>> rows;
        for (u64 d : r.computed)
            rows.emplace_back(d, std::binary_search(spec.expected.begin(), spec.expected.end(), d) ? "match" : "spurious");
        for (u64 d : r.missing) rows.emplace_back(d, "missing");
        std::sort(rows.begin(), rows.end());
        for (const auto& [d, status] : rows) out << csv_field(r.id) << ',' << d << ',' << status << '\n';
        break;
    }
    case Format::jsonl: {
        ordered_json j;
        j["type"] = "summary";
        j["id"] = r.id;
        j["bound"] = r.bound_used;
        j["matched"] = r.matched;
        j["expected_count"] = spec.expected.size();
        j["computed_count"] = r.computed.size();
        j["missing"] = r.missing;
        j["spurious"] = r.spurious;
        j["caveat"] = r.caveat;
        if (a.timing) j["elapsed_ms"] = r.elapsed_ms;
        out << j.dump() << '\n';
        for (u64 d : r.computed) out << ordered_json{{"type", "computed"}, {"id", r.id}, {"d", d}}.dump() << '\n';
        break;
    }
    }
    return r.matched ? kOk : kMismatch;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
    if (a.id != "all") return verify_one(lookup_theorem(a.id), a, g, out, true);
    if (a.bound) throw ConfigError("--bound cannot be combined with 'all'; each list uses its default bound");
    int code = kOk;
    bool header = true;
    for (const auto& spec : builtin_theorems()) {
        code = std::max(code, verify_one(spec, a, g, out, header));
        header = false;
    }
    return code;
}

int cmd_implications(const std::string& id, const Globals& g, std::ostream& out) {
    const std::vector<std::string> ids = id == "all" ? implication_ids() : std::vector<std::string>{id};
    bool all_hold = true;
    if (g.fmt() == Format::csv) out << "id,d,property,holds,detail\n";
    for (const auto& one : ids) {
        for (const auto& c : check_class_implications(one)) {
            all_hold = all_hold && c.holds;
            switch (g.fmt()) {
            case Format::human:
                out << std::left << std::setw(8) << one << std::setw(8) << c.d << (c.holds ? "ok    " : "FAIL  ")
                    << c.property << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
                break;
            case Format::csv:
                out << csv_field(one) << ',' << c.d << ',' << csv_field(c.property) << ','
                    << (c.holds ? "true" : "false") << ',' << csv_field(c.detail) << '\n';
                break;
            case Format::jsonl:
                out << ordered_json{{"id", one}, {"d", c.d}, {"property", c.property}, {"holds", c.holds},
                                    {"detail", c.detail}}
                           .dump()
                    << '\n';
                break;
            }
        }
    }
    return all_hold ? kOk : kMismatch;
}

int cmd_list(const Globals& g, std::ostream& out) {
    if (g.fmt() == Format::csv) out << "id,count,default_bound,profile,threshold,filter,conjecture,statement\n";
    for (const auto& s : builtin_theorems()) {
        switch (g.fmt()) {
        case Format::human:
            out << std::left << std::setw(9) << s.id << std::setw(5) << s.expected.size() << std::setw(9)
                << s.default_bound << std::setw(13) << to_string(s.profile) << "<= " << s.threshold << "  "
                << std::setw(30) << s.filter.to_string() << "  " << s.statement << '\n';
            break;
        case Format::csv:
            out << csv_field(s.id) << ',' << s.expected.size() << ',' << s.default_bound << ',' << to_string(s.profile)
                << ',' << s.threshold << ',' << csv_field(s.filter.to_string()) << ','
                << (s.conjecture ? "true" : "false") << ',' << csv_field(s.statement) << '\n';
            break;
        case Format::jsonl: {
            ordered_json j;
            j["id"] = s.id;
            j["count"] = s.expected.size();
            j["default_bound"] = s.default_bound;
            j["profile"] = to_string(s.profile);
            j["threshold"] = s.threshold;
            j["filter"] = s.filter.to_string();
            j["conjecture"] = s.conjecture;
            j["statement"] = s.statement;
            j["expected"] = s.expected;
            out << j.dump() << '\n';
            break;
        }
        }
    }
    return kOk;
}

// --- scan -----------------------------------------------------------------------------

struct ScanArgs {
    std::optional<u64> lo;
    std::optional<u64> hi;
    std::optional<std::string> profile;
    std::optional<unsigned> threshold;
    std::optional<std::string> filter;
    u64 chunk = 10'000;
    std::optional<std::string> journal;
    bool resume = false;
    std::optional<u64> max_chunks;
};

class RecordWriter {
public:
    RecordWriter(Format f, std::ostream& out) : fmt_(f), out_(out) {
        if (fmt_ == Format::csv) out_ << kRecordCsvHeader << '\n';
        if (fmt_ == Format::human) out_ << std::left << std::setw(12) << "d" << std::setw(11) << "max_omega" << "witness_x\n";
    }
    void operator()(const ResultRecord& r) {
        switch (fmt_) {
        case Format::human:
            out_ << std::left << std::setw(12) << r.d << std::setw(11) << r.max_omega << opt_str(r.witness_x, "-") << '\n';
            break;
        case Format::csv: out_ << record_to_csv(r) << '\n'; break;
        case Format::jsonl: out_ << record_to_jsonl(r) << '\n'; break;
        }
    }

private:
    Format fmt_;
    std::ostream& out_;
};

int cmd_scan(const ScanArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    ScanOptions so;
    so.workers = g.workers;
    so.sieve_limit = g.sieve_limit;
    so.max_chunks = a.max_chunks;

    ScanJob job;
    std::vector<ResultRecord> replay;
    u64 first_chunk = 0;
    if (a.resume) {
        if (!a.journal) throw ConfigError("--resume needs --journal");
        if (a.lo || a.hi || a.profile || a.threshold || a.filter)
            throw ConfigError("--resume takes the job from the journal; drop --lo/--hi/--profile/--threshold/--filter");
        ResumeState st = resume(*a.journal);
        job = st.job;
        replay = std::move(st.records);
        first_chunk = st.next_chunk;
    } else {
        if (!a.lo || !a.hi || !a.profile) throw ConfigError("scan needs --lo, --hi and --profile (or --resume)");
        job.lo = *a.lo;
        job.hi = *a.hi;
        job.profile = parse_profile(*a.profile);
        job.threshold = a.threshold.value_or(is_fr(job.profile) ? 1 : 2);
        job.filter = DFilter::parse(a.filter.value_or("any"));
        job.chunk_size = a.chunk;
        job.journal_path = a.journal;
    }
    job.validate();

    RecordWriter write(g.fmt(), out);
    for (const auto& r : replay) write(r);
    ScanSummary summary;
    if (first_chunk < job.chunk_count()) summary = scan(job, so, std::ref(write), first_chunk);
    else summary = {job.chunk_count(), job.chunk_count(), 0};
    if (!summary.complete())
        err << "stopped before chunk " << summary.next_chunk << " of " << summary.chunks_total
            << "; continue with --journal " << a.journal.value_or("<path>") << " --resume\n";
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact searches over omega(d +- x^2), quadratic class groups and the built-in value lists."};
    app.name("qsearch");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}))
        ->capture_default_str();
    app.add_option("--workers", g.workers, "Scan worker threads, 0 = hardware concurrency")
        ->envname("QS_WORKERS")
        ->capture_default_str();
    app.add_option("--sieve-limit", g.sieve_limit, "Sieve size override [default: 2*hi, or hi for minus profiles]")
        ->envname("QS_SIEVE_LIMIT");

    OmegaArgs oa;
    auto* omega = app.add_subcommand("omega", "max omega(d + sign x^2) over a parity-filtered x range");
    omega->add_option("d", oa.d)->required();
    omega->add_option("--parity", oa.parity)->check(CLI::IsMember({"odd", "even", "all"}))->capture_default_str();
    omega->add_option("--sign", oa.sign)->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
    omega->add_option("--xmin", oa.x_min, "Smallest x [default: 1 odd, 2 even, 0 all]");

    i64 disc = 0;
    auto* classgroup = app.add_subcommand("classgroup", "class number, structure and reduced forms of discriminant D");
    classgroup->add_option("D", disc, "Fundamental discriminant")->required();
    auto* realclass = app.add_subcommand("realclass", "wide and narrow class numbers of a real discriminant D");
    realclass->add_option("D", disc, "Fundamental discriminant > 0")->required();

    u64 unit_d = 0;
    auto* unit = app.add_subcommand("unit", "fundamental unit of Q(sqrt d)");
    unit->add_option("d", unit_d)->required();

    u64 fr_d = 0;
    std::string fr_variant = "imag-odd";
    auto* fr = app.add_subcommand("fr", "Frobenius-Rabinowitsch quotient test");
    fr->add_option("d", fr_d)->required();
    fr->add_option("--variant", fr_variant)
        ->check(CLI::IsMember({"imag-odd", "imag-even", "real"}))
        ->capture_default_str();

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "recompute a built-in value list by exhaustive search");
    verify_cmd->add_option("id", va.id, "List id (see list-theorems) or 'all'")->required();
    verify_cmd->add_option("--bound", va.bound, "Search bound [default: per list]");
    verify_cmd->add_option("--chunk", va.chunk, "Scan chunk size")->capture_default_str();
    verify_cmd->add_flag("--timing", va.timing, "Report elapsed time");

    std::string impl_id;
    auto* impl = app.add_subcommand("implications", "class-group consequences checked on a list's values");
    impl->add_option("id", impl_id, "T1.2, T1.3, T1.3-p, T1.3-pq, T1.4, T1.5, T1.7, C3, FR1, FR2, FR-real or 'all'")->required();

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "range scan with optional journal");
    scan_cmd->add_option("--lo", sa.lo);
    scan_cmd->add_option("--hi", sa.hi);
    scan_cmd->add_option("--profile", sa.profile, "m_odd m_even m_even_real m_all fr-imag-odd fr-imag-even fr-real");
    scan_cmd->add_option("--threshold", sa.threshold, "Largest passing maximum [default: 2, or 1 for fr-*]");
    scan_cmd->add_option("--filter", sa.filter, "Conditions on d, e.g. res=2/4,squarefree [default: any]");
    scan_cmd->add_option("--chunk", sa.chunk)->capture_default_str();
    scan_cmd->add_option("--journal", sa.journal, "Append records and chunk markers to this file");
    scan_cmd->add_flag("--resume", sa.resume, "Continue the job recorded in --journal");
    scan_cmd->add_option("--max-chunks", sa.max_chunks, "Stop after this many chunks");

    auto* list = app.add_subcommand("list-theorems", "built-in value lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*omega) return cmd_omega(oa, g, out);
        if (*classgroup) return cmd_classgroup(disc, g, out);
        if (*realclass) return cmd_realclass(disc, g, out);
        if (*unit) return cmd_unit(unit_d, g, out);
        if (*fr) return cmd_fr(fr_d, fr_variant, g, out);
        if (*verify_cmd) return cmd_verify(va, g, out);
        if (*impl) return cmd_implications(impl_id, g, out);
        if (*scan_cmd) return cmd_scan(sa, g, out, err);
        if (*list) return cmd_list(g, out);
    } catch (const ResourceError& e) {
        err << "qsearch: " << e.what() << '\n';
        return kResource;
    } catch (const InvariantViolation& e) {
        err << "qsearch: internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "qsearch: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace qs::cli
