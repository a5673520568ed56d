#include "tseq/report.hpp"

#include <stdexcept>

namespace tseq {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    throw std::logic_error("bad verdict");
}

Verdict verdict_from_str(const std::string& s) {
    if (s == "certified") return Verdict::certified;
    if (s == "refuted") return Verdict::refuted;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

nlohmann::json WitnessReport::to_json() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["params"] = params;
    if (!evidence_columns.empty()) j["evidence_columns"] = evidence_columns;
    j["evidence"] = evidence;
    j["verdict"] = verdict_str(verdict);
    j["bounds"] = bounds;
    if (!notes.empty()) j["notes"] = notes;
    return j;
}

WitnessReport WitnessReport::from_json(const nlohmann::json& j) {
    WitnessReport r;
    r.claim = j.at("claim").get<std::string>();
    if (j.contains("params"))
        r.params = j.at("params").get<std::map<std::string, std::string>>();
    if (j.contains("evidence_columns"))
        r.evidence_columns = j.at("evidence_columns").get<std::vector<std::string>>();
    if (j.contains("evidence"))
        r.evidence = j.at("evidence").get<std::vector<std::vector<std::string>>>();
    r.verdict = verdict_from_str(j.at("verdict").get<std::string>());
    if (j.contains("bounds")) r.bounds = j.at("bounds").get<std::string>();
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

}  // namespace tseq
