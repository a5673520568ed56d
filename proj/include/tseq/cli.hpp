#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tseq/finvec.hpp"
#include "tseq/intseq.hpp"
#include "tseq/numeric.hpp"
#include "tseq/report.hpp"
#include "tseq/tracker.hpp"

namespace tseq::cli {

/// "3e0-2e7" -> sparse vector. See FinVec::parse for the grammar.
FinVec parse_finvec(const std::string& text);

/// "p" or "p/q" -> exact rational.
Rat parse_fraction(const std::string& text);

/// Sequence preset expressions: "n", "n^2", "2^n", "(3/2)^n", each with an
/// optional "+c"/"-c" shift suffix.
IntSeq parse_seq_expr(const std::string& text);

/// Growth presets: "n^2", "2^n", "(3/2)^n", "2^n+n^2", "(3/2)^n+n^2".
tracker::GrowthFn parse_growth(const std::string& text);

/// "default", "n", or a nonnegative constant fraction.
tracker::EpsFn parse_eps(const std::string& text);

/// One experiment: id, parameter map, output destination.
struct ExperimentConfig {
    std::string experiment;
    nlohmann::json params;  // flat object; integer values normalized to decimal strings
    std::string out;        // output path ("" = stdout summary only)
    std::string format;     // "json" | "csv"

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct RunOutcome {
    std::optional<WitnessReport> report;
    bool tabular = false;   // purely tabular output, no verdict
    nlohmann::json payload; // full output document as written

    /// 0 certified/tabular, 1 refuted, 2 inconclusive.
    int exit_code() const;
};

/// Dispatches to the corresponding module operation and writes the output
/// document (atomically) when cfg.out is set.
RunOutcome run(const ExperimentConfig& cfg);

/// Full argv entry point (used by the tseq binary and by tests).
int run_cli(int argc, const char* const* argv);

/// RFC-style CSV field quoting.
std::string csv_quote(const std::string& field);

}  // namespace tseq::cli
