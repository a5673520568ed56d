#include "tseq/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tseq/amalgam.hpp"
#include "tseq/freeab.hpp"
#include "tseq/ringseq.hpp"
#include "tseq/topology.hpp"
#include "tseq/zbase.hpp"

namespace tseq::cli {

FinVec parse_finvec(const std::string& text) {
    return FinVec::parse(text);
}

Rat parse_fraction(const std::string& text) {
    return tseq::parse_fraction(text);
}

namespace {

std::string strip_ws(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

[[noreturn]] void expr_error(const std::string& text, const std::string& what) {
    throw std::invalid_argument("cannot parse '" + text + "': " + what);
}

// Splits "BASE" or "BASE+c" / "BASE-c" where BASE ends with "^n".
std::pair<std::string, Int> split_shift(const std::string& s) {
    auto caret = s.rfind("^n");
    std::size_t after = caret == std::string::npos ? 1 : caret + 2;
    if (after >= s.size()) return {s, Int(0)};
    char sign = s[after];
    if (sign != '+' && sign != '-')
        throw std::invalid_argument("expected '+' or '-' after '" + s.substr(0, after) + "'");
    Int c = parse_int(s.substr(after + 1));
    return {s.substr(0, after), sign == '-' ? Int(-c) : c};
}

Rat parse_power_base(const std::string& base, const std::string& full) {
    // base is the part before "^n": digits or "(p/q)".
    if (base.empty()) expr_error(full, "missing power base");
    if (base.front() == '(') {
        if (base.back() != ')') expr_error(full, "unbalanced parentheses");
        return tseq::parse_fraction(base.substr(1, base.size() - 2));
    }
    return Rat(parse_int(base));
}

}  // namespace

IntSeq parse_seq_expr(const std::string& text) {
    std::string s = strip_ws(text);
    if (s.empty()) expr_error(text, "empty expression");
    if (s == "n") return IntSeq::identity();
    if (s.rfind("n^", 0) == 0) {
        Int d = parse_int(s.substr(2));
        if (d < 1 || d > 64) expr_error(text, "degree out of range");
        return IntSeq::poly(d.get_ui());
    }
    auto caret = s.find("^n");
    if (caret == std::string::npos) {
        // Plain shifted identity: "n+5" / "n-3".
        if (s.front() == 'n' && s.size() > 1 && (s[1] == '+' || s[1] == '-'))
            return IntSeq::shifted(IntSeq::identity(), s[1] == '-' ? Int(-parse_int(s.substr(2)))
                                                                   : parse_int(s.substr(2)));
        expr_error(text, "expected 'n', 'n^d', 'b^n' or '(p/q)^n'");
    }
    auto [base_text, shift] = split_shift(s);
    if (base_text.size() < 2 || base_text.substr(base_text.size() - 2) != "^n")
        expr_error(text, "expected the exponent part '^n'");
    Rat r = parse_power_base(base_text.substr(0, base_text.size() - 2), text);
    if (r <= 0) expr_error(text, "power base must be positive");
    IntSeq seq = IntSeq::pow(r);
    if (shift != 0) seq = IntSeq::shifted(std::move(seq), shift);
    return seq;
}

tracker::GrowthFn parse_growth(const std::string& text) {
    std::string s = strip_ws(text);
    if (s.empty()) expr_error(text, "empty expression");
    if (s == "n") return tracker::GrowthFn::poly(1);
    if (s.rfind("n^", 0) == 0) {
        Int d = parse_int(s.substr(2));
        if (d < 1 || d > 64) expr_error(text, "degree out of range");
        return tracker::GrowthFn::poly(d.get_ui());
    }
    bool plus_square = false;
    if (s.size() > 4 && s.substr(s.size() - 4) == "+n^2") {
        plus_square = true;
        s = s.substr(0, s.size() - 4);
    }
    if (s.size() < 2 || s.substr(s.size() - 2) != "^n")
        expr_error(text, "expected 'n^d', 'b^n', '(p/q)^n', or those with '+n^2'");
    Rat r = parse_power_base(s.substr(0, s.size() - 2), text);
    return plus_square ? tracker::GrowthFn::exp_poly(r) : tracker::GrowthFn::pow(r);
}

tracker::EpsFn parse_eps(const std::string& text) {
    std::string s = strip_ws(text);
    if (s == "default") return tracker::EpsFn::paper_default();
    if (s == "n") return tracker::EpsFn::linear();
    return tracker::EpsFn::constant(tseq::parse_fraction(s));
}

namespace {

using nlohmann::json;

// ---- json parameter access ----

void require_keys(const json& params, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    if (!params.is_object()) throw std::invalid_argument(where + ": params must be an object");
    for (auto it = params.begin(); it != params.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
    }
}

std::string jstr(const json& p, const std::string& key) {
    if (!p.contains(key)) throw std::invalid_argument("missing required parameter '" + key + "'");
    const json& v = p.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw std::invalid_argument("parameter '" + key + "' must be a string");
}

Int jint(const json& p, const std::string& key) {
    return parse_int(jstr(p, key));
}

std::size_t jsize(const json& p, const std::string& key) {
    Int v = jint(p, key);
    if (v < 0 || v > 100'000'000) throw std::invalid_argument("parameter '" + key + "' out of range");
    return static_cast<std::size_t>(v.get_ui());
}

std::size_t jsize_or(const json& p, const std::string& key, std::size_t dflt) {
    return p.contains(key) ? jsize(p, key) : dflt;
}

// ---- output helpers ----

std::string iso_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << text;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("parse error in '" + path + "': " + e.what());
    }
}

std::string tracked_csv(const tracker::TrackedSeq& seq) {
    std::string out = "n,f(n),eps(n),a_n,k_n\r\n";
    for (const auto& e : seq.entries) {
        out += std::to_string(e.n) + "," + e.f.get_str() + "," +
               csv_quote(fraction_str(e.eps)) + "," + e.a.get_str() + "," + std::to_string(e.k) +
               "\r\n";
    }
    return out;
}

std::string report_csv(const WitnessReport& report) {
    std::string out;
    if (!report.evidence_columns.empty()) {
        for (std::size_t i = 0; i < report.evidence_columns.size(); ++i)
            out += (i ? "," : "") + csv_quote(report.evidence_columns[i]);
        out += "\r\n";
    }
    for (const auto& row : report.evidence) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_quote(row[i]);
        out += "\r\n";
    }
    return out;
}

// ---- sequence / base materialization ----

zbase::NeighborhoodBase base_from_param(const json& v) {
    if (v.is_object()) return zbase::NeighborhoodBase::from_json(v);
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (!s.empty() && s.front() == '{')
            return zbase::NeighborhoodBase::from_json(json::parse(s));
        return zbase::NeighborhoodBase::from_json(read_json_file(s));
    }
    throw std::invalid_argument("'base' must be a config object or a path to one");
}

tracker::GrowthFn growth_from_param(const json& v) {
    if (v.is_string()) return parse_growth(v.get<std::string>());
    if (v.is_object() && v.contains("table")) {
        std::vector<Int> values;
        for (const auto& t : v.at("table"))
            values.push_back(t.is_string() ? parse_int(t.get<std::string>())
                                           : Int(t.dump()));
        return tracker::GrowthFn::table(std::move(values));
    }
    throw std::invalid_argument("'f' must be a preset expression or {\"table\": [...]}");
}

freeab::FiberFn fiber_from_param(const json& p) {
    if (!p.contains("fiber")) return freeab::FiberFn::dyadic_valuation();
    const json& v = p.at("fiber");
    if (v.is_string() && v.get<std::string>() == "preset") return freeab::FiberFn::dyadic_valuation();
    if (v.is_array()) {
        std::vector<Int> table;
        for (const auto& t : v)
            table.push_back(t.is_string() ? parse_int(t.get<std::string>()) : Int(t.dump()));
        return freeab::FiberFn::periodic(std::move(table));
    }
    throw std::invalid_argument("'fiber' must be \"preset\" or a value table array");
}

std::vector<Int> grid_from_param(const json& p) {
    std::vector<Int> grid;
    if (!p.contains("grid")) return {1, 2, 4, 8, 16, 32};
    const json& v = p.at("grid");
    if (v.is_array()) {
        for (const auto& t : v)
            grid.push_back(t.is_string() ? parse_int(t.get<std::string>()) : Int(t.dump()));
    } else if (v.is_string()) {
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(parse_int(item));
    } else {
        throw std::invalid_argument("'grid' must be an array or a comma list");
    }
    if (grid.empty()) throw std::invalid_argument("'grid' must be nonempty");
    return grid;
}

std::vector<Int> csv_column_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<Int> values;
    std::string line;
    std::size_t col = 3;  // a_n column of the track layout
    bool first = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char ch = line[i];
            if (quoted) {
                if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else if (ch == '"') quoted = false;
                else cur += ch;
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (first) {
            first = false;
            bool header = false;
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "a_n") { col = i; header = true; }
                else if (!fields[i].empty() && !std::isdigit(static_cast<unsigned char>(fields[i][0])) &&
                         fields[i][0] != '-')
                    header = true;
            }
            if (header) continue;
        }
        if (col >= fields.size())
            throw std::invalid_argument("csv row in '" + path + "' has no column " + std::to_string(col));
        values.push_back(parse_int(fields[col]));
    }
    if (values.empty()) throw std::invalid_argument("no values found in '" + path + "'");
    return values;
}

// ---- runners ----

RunOutcome run_track(const json& p) {
    require_keys(p, {"base", "f", "eps", "N", "level_cap"}, "track");
    for (const char* k : {"base", "f", "N"})
        if (!p.contains(k))
            throw std::invalid_argument(std::string("track: missing required parameter '") + k + "'");
    tracker::TrackerSpec spec{growth_from_param(p.at("f")),
                              p.contains("eps") ? parse_eps(jstr(p, "eps"))
                                                : tracker::EpsFn::paper_default(),
                              base_from_param(p.at("base")), jsize_or(p, "level_cap", 64), 0};
    std::size_t N = jsize(p, "N");
    tracker::TrackedSeq seq = tracker::track(spec, N);

    RunOutcome oc;
    oc.tabular = true;
    json entries = json::array();
    std::size_t capped = 0;
    for (const auto& e : seq.entries) {
        json row;
        row["n"] = e.n;
        row["f"] = e.f.get_str();
        row["eps"] = fraction_str(e.eps);
        row["a"] = e.a.get_str();
        row["k"] = e.k;
        if (e.cap_limited) { row["cap_limited"] = true; ++capped; }
        entries.push_back(std::move(row));
    }
    oc.payload["kind"] = "tracked";
    oc.payload["f"] = seq.f_label;
    oc.payload["eps"] = seq.eps_label;
    oc.payload["base"] = seq.base_config;
    oc.payload["N"] = N;
    oc.payload["cap_limited_entries"] = capped;
    oc.payload["entries"] = std::move(entries);
    oc.payload["csv"] = tracked_csv(seq);
    return oc;
}

RunOutcome run_gaps(const json& p) {
    require_keys(p, {"seq", "in", "N", "window", "grid"}, "gaps");
    std::vector<Int> values;
    std::string source;
    if (p.contains("in")) {
        source = jstr(p, "in");
        values = csv_column_values(source);
    } else if (p.contains("seq")) {
        source = jstr(p, "seq");
        IntSeq seq = parse_seq_expr(source);
        values = seq.prefix(jsize(p, "N"));
    } else {
        throw std::invalid_argument("gaps: need either 'seq' or 'in'");
    }
    std::size_t window = jsize(p, "window");
    std::vector<Int> grid = grid_from_param(p);
    tracker::GapStats stats = tracker::gap_stats(values, window, grid);

    WitnessReport report;
    report.claim = "gap-growth";
    report.params["source"] = source;
    report.params["terms"] = std::to_string(values.size());
    report.params["window"] = std::to_string(window);
    report.bounds = "gaps a_{n+1}-a_n over the given prefix";
    report.evidence_columns = {"block", "min_gap"};
    for (const auto& [j, m] : stats.block_min)
        report.evidence.push_back({std::to_string(j), m.get_str()});
    for (const auto& entry : stats.grid) {
        std::string c = entry.c.get_str();
        report.params["gaps_le_" + c] = std::to_string(entry.count);
        if (entry.persists)
            report.notes.push_back("violation evidence at C=" + c + ": a gap <= " + c +
                                   " occurs in the final block");
    }
    report.verdict = stats.violation_evidence ? Verdict::refuted : Verdict::certified;
    if (!stats.violation_evidence)
        report.notes.push_back("no grid bound persists into the final block (finite evidence only)");

    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_ringseq(const json& p) {
    require_keys(p, {"r", "N", "witnesses"}, "ringseq");
    ringseq::RatioTarget r(parse_fraction(jstr(p, "r")));
    std::size_t N = jsize(p, "N");
    std::size_t kmax = 0;
    if (p.contains("witnesses")) {
        kmax = jsize(p, "witnesses");
    } else {
        std::size_t pow3 = 3;
        while (2 * pow3 <= N) { ++kmax; pow3 *= 3; }
    }
    if (kmax == 0)
        throw std::invalid_argument("ringseq: need N >= 6 for at least one obstruction witness");
    ringseq::RingSeq seq = ringseq::gen_theorem2(r, N);
    auto witnesses = ringseq::obstruction_witnesses(seq, kmax);

    WitnessReport report;
    report.claim = "ring-obstruction";
    report.params["r"] = fraction_str(r.value());
    report.params["N"] = std::to_string(N);
    report.params["Kmax"] = std::to_string(kmax);
    report.bounds = "witness identities checked for k = 1.." + std::to_string(kmax);
    report.evidence_columns = {"k", "index", "a_{2*3^k} - a_{3^k}^2"};
    bool all_one = true;
    std::size_t pow3 = 3;
    for (const auto& w : witnesses) {
        report.evidence.push_back({std::to_string(w.k), std::to_string(2 * pow3), w.value.get_str()});
        all_one = all_one && w.value == 1;
        pow3 *= 3;
    }
    report.verdict = all_one ? Verdict::certified : Verdict::refuted;
    if (all_one)
        report.notes.push_back("ring obstruction certified to k=" + std::to_string(kmax));

    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    json vals = json::array();
    for (const Int& v : seq.values) vals.push_back(v.get_str());
    oc.payload["values"] = std::move(vals);
    json specials = json::array();
    for (std::size_t s : seq.special_indices) specials.push_back(s);
    oc.payload["special_indices"] = std::move(specials);
    if (N >= 2) {
        auto profile = ringseq::ratio_profile(seq, 1, N);
        json blocks = json::array();
        for (const auto& b : profile.blocks) {
            json row;
            row["j"] = b.j;
            row["max_deviation"] = fraction_str(b.max_deviation);
            row["touches_special"] = b.touches_special;
            blocks.push_back(std::move(row));
        }
        oc.payload["ratio_profile"] = {{"max_deviation", fraction_str(profile.max_deviation)},
                                       {"blocks", std::move(blocks)}};
    }
    return oc;
}

RunOutcome run_nbhd_member(const json& p) {
    require_keys(p, {"seq", "x", "slots", "cap", "index_cap"}, "nbhd-member");
    std::string seq_text = jstr(p, "seq");
    topo::CanonicalNbhd nbhd = topo::CanonicalNbhd::parse(jstr(p, "slots"));
    WitnessReport report;
    report.params["slots"] = nbhd.str();

    if (strip_ws(seq_text) == "e") {
        FinVec x = parse_finvec(jstr(p, "x"));
        bool member = topo::member_nbhd_free(x, nbhd);
        report.claim = "free-nbhd-membership";
        report.params["x"] = x.str();
        report.params["answer"] = member ? "member" : "not-member";
        report.bounds = "exact slot-assignment decision";
        report.verdict = Verdict::certified;
        RunOutcome oc;
        oc.report = report;
        oc.payload = report.to_json();
        return oc;
    }

    IntSeq a = parse_seq_expr(seq_text);
    topo::TailSumQuery q{jint(p, "x"), nbhd, jsize_or(p, "cap", 4), jsize_or(p, "index_cap", 64)};
    topo::TailSumResult res = topo::member_nbhd_int(a, q);
    report.claim = "tail-sum-membership";
    report.params["seq"] = a.label();
    report.params["x"] = q.target.get_str();
    report.params["depth_cap"] = std::to_string(q.depth_cap);
    report.params["index_cap"] = std::to_string(q.index_cap);
    report.bounds = "sums of at most " + std::to_string(q.depth_cap) + " terms with indices below " +
                    std::to_string(q.index_cap);
    report.evidence_columns = {"index", "term"};
    if (res.member) {
        Int total = 0;
        for (const auto& [n, term] : res.summands) {
            report.evidence.push_back({std::to_string(n), term.get_str()});
            total += term;
        }
        if (total != q.target && !(res.summands.empty() && q.target == 0))
            throw std::logic_error("witness summands do not add up");
        report.params["answer"] = "member";
        report.verdict = Verdict::certified;
    } else {
        report.params["answer"] = "not-member-within-cap";
        report.verdict = Verdict::inconclusive;
        report.notes.push_back("bounded certificate only; deeper sums may still reach x");
    }
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_sup_witness(const json& p) {
    require_keys(p, {"a", "b", "g", "N"}, "sup-witness");
    IntSeq a = parse_seq_expr(jstr(p, "a"));
    IntSeq b = parse_seq_expr(jstr(p, "b"));
    Int g = jint(p, "g");
    std::size_t N = jsize(p, "N");
    WitnessReport report = topo::diagonal_escape_report(a, b, g, N);
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    auto pairs = topo::sup_witness_pairs(a, b, g, N);
    json jp = json::array();
    for (const auto& [n, m] : pairs) {
        jp.push_back(json::array({n, m}));
        if (jp.size() >= 1000) break;
    }
    oc.payload["pairs"] = std::move(jp);
    return oc;
}

RunOutcome run_ballcap(const json& p) {
    require_keys(p, {"n0", "window"}, "ball-cap");
    WitnessReport report = freeab::ball_cap_Un(jsize(p, "n0"), jsize(p, "window"));
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_freeab_witness(const json& p) {
    require_keys(p, {"n", "slots", "count"}, "freeab witness");
    std::size_t n = jsize(p, "n");
    topo::CanonicalNbhd nbhd = topo::CanonicalNbhd::parse(jstr(p, "slots"));
    std::size_t count = jsize(p, "count");
    auto witnesses = freeab::nondiscrete_witness(n, nbhd, count);

    WitnessReport report;
    report.claim = "dyadic-nondiscreteness-witness";
    report.params["n"] = std::to_string(n);
    report.params["slots"] = nbhd.str();
    report.params["count"] = std::to_string(count);
    report.bounds = "smallest indices i with 2^n e_i in the neighborhood";
    report.evidence_columns = {"vector", "in_Un", "in_nbhd"};
    bool ok = true;
    for (const FinVec& w : witnesses) {
        bool un = freeab::in_Un(w, n);
        bool nb = topo::member_nbhd_free(w, nbhd);
        ok = ok && un && nb;
        report.evidence.push_back({w.str(), un ? "true" : "false", nb ? "true" : "false"});
    }
    report.verdict = ok ? Verdict::certified : Verdict::refuted;
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_compact(const json& p) {
    require_keys(p, {"n0", "count", "fiber"}, "freeab compact");
    std::size_t n0 = jsize(p, "n0");
    std::size_t count = jsize(p, "count");
    freeab::FiberFn fiber = fiber_from_param(p);
    freeab::SubgroupH H{fiber};
    auto witnesses = freeab::compact_witness(n0, fiber, count);

    WitnessReport report;
    report.claim = "compact-subset-witness";
    report.params["n0"] = std::to_string(n0);
    report.params["count"] = std::to_string(count);
    report.params["fiber"] = fiber.label();
    report.bounds = "first " + std::to_string(count) + " generators with fiber value " +
                    std::to_string(n0 + 1);
    report.evidence_columns = {"vector", "in_H", "norm1"};
    bool ok = true;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        const FinVec& w = witnesses[i];
        bool inh = freeab::in_H(w, H);
        Int norm = freeab::norm1(w);
        if (i == 0) ok = ok && w.is_zero() && inh;
        else ok = ok && inh && norm == Int(static_cast<unsigned long>(n0)) + 1;
        report.evidence.push_back({w.str(), inh ? "true" : "false", norm.get_str()});
    }
    report.verdict = ok ? Verdict::certified : Verdict::refuted;
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_amalgam_check(const json& p) {
    require_keys(p, {"c", "bound"}, "amalgam check");
    WitnessReport report = amalgam::intersection_check(jint(p, "c"), jint(p, "bound"));
    RunOutcome oc;
    oc.report = report;
    oc.payload = report.to_json();
    return oc;
}

RunOutcome run_amalgam_push(const json& p) {
    require_keys(p, {"a", "c", "N"}, "amalgam push");
    IntSeq a = parse_seq_expr(jstr(p, "a"));
    Int c = jint(p, "c");
    std::size_t N = jsize(p, "N");
    amalgam::PushedSequences pushed = amalgam::pushed_sequences(a, c, N);

    RunOutcome oc;
    oc.tabular = true;
    oc.payload["kind"] = "amalgam-push";
    oc.payload["a"] = a.label();
    oc.payload["c"] = c.get_str();
    oc.payload["N"] = N;
    json e1 = json::array(), e2 = json::array();
    for (const auto& e : pushed.e1) e1.push_back(json::array({e.u.get_str(), e.v.get_str()}));
    for (const auto& e : pushed.e2) e2.push_back(json::array({e.u.get_str(), e.v.get_str()}));
    oc.payload["e1"] = std::move(e1);
    oc.payload["e2"] = std::move(e2);
    oc.payload["first_index"] = pushed.first;
    return oc;
}

json normalize_params(const json& params, const std::string& where) {
    if (!params.is_object()) throw std::invalid_argument(where + ": params must be an object");
    json out = json::object();
    for (auto it = params.begin(); it != params.end(); ++it) {
        const json& v = it.value();
        if (v.is_number_integer()) out[it.key()] = std::to_string(v.get<long long>());
        else if (v.is_number_float())
            throw std::invalid_argument(where + ": parameter '" + it.key() +
                                        "' must be exact (use a decimal or fraction string)");
        else out[it.key()] = v;
    }
    return out;
}

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = {"thm1-track", "thm1-gaps",   "thm2-ring",
                                                 "thm3-subgroup", "thm5-sup", "thm6-tau",
                                                 "thm4-amalgam"};
    return ids;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("experiment config: expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string k = it.key();
        if (k != "experiment" && k != "params" && k != "out" && k != "format")
            throw std::invalid_argument("experiment config: unknown key '" + k + "'");
    }
    ExperimentConfig cfg;
    if (!j.contains("experiment"))
        throw std::invalid_argument("experiment config: missing 'experiment'");
    cfg.experiment = j.at("experiment").get<std::string>();
    bool known = false;
    for (const auto& id : experiment_ids()) known = known || id == cfg.experiment;
    if (!known) throw std::invalid_argument("unknown experiment id '" + cfg.experiment + "'");
    cfg.params = normalize_params(j.contains("params") ? j.at("params") : json::object(),
                                  cfg.experiment);
    cfg.out = j.contains("out") ? j.at("out").get<std::string>() : "";
    cfg.format = j.contains("format") ? j.at("format").get<std::string>() : "json";
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("format must be 'json' or 'csv'");
    return cfg;
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["params"] = params;
    j["out"] = out;
    j["format"] = format;
    return j;
}

int RunOutcome::exit_code() const {
    if (tabular || !report) return 0;
    switch (report->verdict) {
        case Verdict::certified: return 0;
        case Verdict::refuted: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 3;
}

namespace {

void write_outcome(const RunOutcome& oc, const std::string& out, const std::string& format) {
    if (out.empty()) return;
    if (format == "csv") {
        if (oc.payload.contains("csv")) {
            write_text_atomic(out, oc.payload.at("csv").get<std::string>());
            return;
        }
        if (oc.report) {
            write_text_atomic(out, report_csv(*oc.report));
            return;
        }
        throw std::invalid_argument("csv output is not available for this command");
    }
    json doc = oc.payload;
    doc.erase("csv");
    doc["timestamp"] = iso_timestamp();
    write_text_atomic(out, doc.dump(2) + "\n");
}

void print_summary(const RunOutcome& oc) {
    if (oc.report) {
        std::cout << oc.report->claim << ": " << verdict_str(oc.report->verdict) << "\n";
        for (const auto& note : oc.report->notes) std::cout << "  " << note << "\n";
    } else if (oc.payload.contains("kind")) {
        std::cout << oc.payload.at("kind").get<std::string>() << ": done\n";
    }
}

RunOutcome dispatch(const std::string& experiment, const json& params) {
    if (experiment == "thm1-track") return run_track(params);
    if (experiment == "thm1-gaps") return run_gaps(params);
    if (experiment == "thm2-ring") return run_ringseq(params);
    if (experiment == "thm3-subgroup") return run_compact(params);
    if (experiment == "thm5-sup") return run_sup_witness(params);
    if (experiment == "thm6-tau") return run_ballcap(params);
    if (experiment == "thm4-amalgam") return run_amalgam_check(params);
    throw std::invalid_argument("unknown experiment id '" + experiment + "'");
}

// Collects flag values as strings; --config file keys override them.
struct ParamSink {
    json values = json::object();
    std::string config_path;
    std::string out;
    std::string format = "json";

    void set(const std::string& key, const std::string& value) {
        if (!value.empty()) values[key] = value;
    }

    json finalize(const std::string& where) {
        if (!config_path.empty()) {
            json cfg = read_json_file(config_path);
            if (!cfg.is_object())
                throw std::invalid_argument("--config file must hold a JSON object");
            for (auto it = cfg.begin(); it != cfg.end(); ++it) {
                if (it.key() == "out") out = it.value().get<std::string>();
                else if (it.key() == "format") format = it.value().get<std::string>();
                else values[it.key()] = it.value();
            }
        }
        return normalize_params(values, where);
    }
};

}  // namespace

RunOutcome run(const ExperimentConfig& cfg) {
    RunOutcome oc = dispatch(cfg.experiment, cfg.params);
    write_outcome(oc, cfg.out, cfg.format);
    return oc;
}

namespace {

struct SubSpec {
    const char* flag;
    const char* key;
    const char* help;
};

void wire_subcommand(CLI::App* sub, std::vector<SubSpec> specs, const char* where,
                     RunOutcome (*runner)(const json&), int& exit_code,
                     const char* default_format = "json") {
    auto sink = std::make_shared<ParamSink>();
    sink->format = default_format;
    auto args = std::make_shared<std::map<std::string, std::string>>();
    for (const auto& s : specs) sub->add_option(s.flag, (*args)[s.key], s.help);
    sub->add_option("--config", sink->config_path, "JSON file whose keys override flags");
    sub->add_option("--out", sink->out, "output file path");
    sub->add_option("--format", sink->format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->callback([sink, args, where, runner, &exit_code]() {
        for (const auto& [k, v] : *args) sink->set(k, v);
        RunOutcome oc = runner(sink->finalize(where));
        write_outcome(oc, sink->out, sink->format);
        print_summary(oc);
        exit_code = oc.exit_code();
    });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact finite certificates for sequence-determined group topologies on Z"};
    app.require_subcommand(1);
    int exit_code = 0;

    wire_subcommand(app.add_subcommand("track", "greedy neighborhood tracking of a growth target"),
                    {{"--base", "base", "base config (inline JSON or file path)"},
                     {"--f", "f", "growth preset, e.g. n^2 or (3/2)^n+n^2"},
                     {"--eps", "eps", "default | n | constant fraction"},
                     {"--N", "N", "number of terms"},
                     {"--level-cap", "level_cap", "level search cap (character bases)"}},
                    "track", run_track, exit_code, "csv");

    wire_subcommand(app.add_subcommand("gaps", "per-block minimum gap statistics"),
                    {{"--seq", "seq", "sequence preset, e.g. n or 2^n"},
                     {"--in", "in", "CSV file with an a_n column"},
                     {"--N", "N", "prefix length for --seq"},
                     {"--window", "window", "block width"},
                     {"--grid", "grid", "comma list of gap bounds C"}},
                    "gaps", run_gaps, exit_code);

    wire_subcommand(app.add_subcommand("ringseq", "ratio-r sequence with obstruction witnesses"),
                    {{"--r", "r", "exact rational > 1, e.g. 3/2"},
                     {"--N", "N", "number of terms"},
                     {"--witnesses", "witnesses", "check k = 1..K"}},
                    "ringseq", run_ringseq, exit_code);

    wire_subcommand(app.add_subcommand("nbhd-member", "membership in a canonical neighborhood"),
                    {{"--seq", "seq", "'e' for the generator sequence, or a preset"},
                     {"--x", "x", "target: finvec text for 'e', integer otherwise"},
                     {"--slots", "slots", "slot values, e.g. 2,2"},
                     {"--cap", "cap", "max number of summands (integer path)"},
                     {"--index-bound", "index_cap", "tail index bound (integer path)"}},
                    "nbhd-member", run_nbhd_member, exit_code);

    wire_subcommand(app.add_subcommand("sup-witness", "diagonal escape witnesses g = b_m - a_n"),
                    {{"--a", "a", "first sequence preset"},
                     {"--b", "b", "second sequence preset"},
                     {"--g", "g", "nonzero target difference"},
                     {"--N", "N", "index bound"}},
                    "sup-witness", run_sup_witness, exit_code);

    auto* freeab_cmd = app.add_subcommand("freeab", "free abelian group certificates");
    freeab_cmd->require_subcommand(1);
    wire_subcommand(freeab_cmd->add_subcommand("ball-cap", "U_{n0} meets the norm ball only in 0"),
                    {{"--n0", "n0", "norm bound and dyadic level"},
                     {"--window", "window", "support window size"}},
                    "ball-cap", run_ballcap, exit_code);
    wire_subcommand(freeab_cmd->add_subcommand("witness", "2^n e_i witnesses inside a neighborhood"),
                    {{"--n", "n", "dyadic level"},
                     {"--slots", "slots", "slot values"},
                     {"--count", "count", "number of witnesses"}},
                    "freeab witness", run_freeab_witness, exit_code);
    wire_subcommand(freeab_cmd->add_subcommand("compact", "generators of the compact witness set"),
                    {{"--n0", "n0", "split parameter"},
                     {"--count", "count", "number of witnesses"},
                     {"--fiber", "fiber", "'preset' (default) or a table"}},
                    "freeab compact", run_compact, exit_code);

    auto* amalgam_cmd = app.add_subcommand("amalgam", "amalgam quotient arithmetic");
    amalgam_cmd->require_subcommand(1);
    wire_subcommand(amalgam_cmd->add_subcommand("check", "e(H) = e1(G) meet e2(G) on a window"),
                    {{"--c", "c", "subgroup modulus"},
                     {"--bound", "bound", "window bound"}},
                    "amalgam check", run_amalgam_check, exit_code);
    wire_subcommand(amalgam_cmd->add_subcommand("push", "normal forms of e1(a_n), e2(a_n)"),
                    {{"--a", "a", "sequence preset"},
                     {"--c", "c", "subgroup modulus"},
                     {"--N", "N", "index bound"}},
                    "amalgam push", run_amalgam_push, exit_code);

    auto run_config = std::make_shared<std::string>();
    auto run_out = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("run", "run an experiment config file");
        sub->add_option("--config", *run_config, "experiment config JSON")->required();
        sub->add_option("--out", *run_out, "override the config's output path");
        sub->callback([run_config, run_out, &exit_code]() {
            ExperimentConfig cfg = ExperimentConfig::from_json(read_json_file(*run_config));
            if (!run_out->empty()) cfg.out = *run_out;
            RunOutcome oc = run(cfg);
            print_summary(oc);
            exit_code = oc.exit_code();
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

std::string csv_quote(const std::string& field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') { needs = true; break; }
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

}  // namespace tseq::cli
