#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace tseq {

enum class Verdict { certified, refuted, inconclusive };

std::string verdict_str(Verdict v);
Verdict verdict_from_str(const std::string& s);

/// Machine-readable certificate for one finite claim: what was checked,
/// with which parameters, the exact evidence, and the verdict. A verdict
/// of certified/refuted is only ever set when the evidence is exact and
/// complete for the stated finite claim.
struct WitnessReport {
    std::string claim;
    std::map<std::string, std::string> params;     // values as decimal/fraction strings
    std::vector<std::string> evidence_columns;     // optional header for evidence rows
    std::vector<std::vector<std::string>> evidence;
    Verdict verdict = Verdict::inconclusive;
    std::string bounds;                            // description of the searched range
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
    static WitnessReport from_json(const nlohmann::json& j);
};

}  // namespace tseq
