#include "tseq/topology.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tseq::topo {

CanonicalNbhd::CanonicalNbhd(const std::vector<std::size_t>& leading_values) {
    if (leading_values.empty()) throw std::invalid_argument("slot sequence must be nonempty");
    for (std::size_t j = 0; j + 1 < leading_values.size(); ++j)
        if (leading_values[j] > leading_values[j + 1])
            throw std::invalid_argument("slot values must be nondecreasing");
    for (std::size_t j = 0; j < leading_values.size(); ++j)
        if (steps_.empty() || steps_.back().second != leading_values[j])
            steps_.emplace_back(j, leading_values[j]);
}

CanonicalNbhd CanonicalNbhd::constant(std::size_t value) {
    return CanonicalNbhd(std::vector<std::size_t>{value});
}

CanonicalNbhd CanonicalNbhd::parse(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty slot value in '" + text + "'");
        Int v = parse_int(item);
        if (v < 0 || v > 1'000'000'000) throw std::invalid_argument("slot value out of range");
        values.push_back(static_cast<std::size_t>(v.get_ui()));
    }
    if (values.empty()) throw std::invalid_argument("empty slot list");
    return CanonicalNbhd(values);
}

std::size_t CanonicalNbhd::slot(std::size_t j) const {
    std::size_t v = steps_.front().second;
    for (const auto& [start, value] : steps_) {
        if (start > j) break;
        v = value;
    }
    return v;
}

bool CanonicalNbhd::dominates(const CanonicalNbhd& o) const {
    // Only step boundaries of either side need checking.
    for (const auto& [start, value] : steps_)
        if (value < o.slot(start)) return false;
    for (const auto& [start, value] : o.steps_)
        if (slot(start) < value) return false;
    return true;
}

std::string CanonicalNbhd::str() const {
    std::string out;
    std::size_t last = steps_.back().first;
    for (std::size_t j = 0; j <= last; ++j) {
        if (j) out += ",";
        out += std::to_string(slot(j));
    }
    out += ",...";
    return out;
}

bool member_nbhd_free(const FinVec& x, const CanonicalNbhd& nbhd) {
    std::size_t t = 0;
    for (const auto& [i, c] : x.coeffs()) {
        Int mult = abs(c);
        // Units are consumed in ascending index order; the t-th unit must
        // clear slot t. Only the last unit of this coefficient needs
        // checking (slots are nondecreasing), but the count must advance
        // by the full multiplicity.
        if (mult > 1'000'000) throw std::invalid_argument("coefficient too large for slot assignment");
        std::size_t count = static_cast<std::size_t>(mult.get_ui());
        if (nbhd.slot(t + count - 1) > i) return false;
        t += count;
    }
    return true;
}

namespace {

struct TailSearch {
    const std::vector<Int>& terms;  // a_n for n in [first, index_cap)
    std::size_t first;
    const CanonicalNbhd& nbhd;
    std::size_t depth_cap;
    std::size_t budget;
    std::vector<std::pair<std::size_t, Int>> chosen;

    // Slot t takes index n >= max(m_t, previous index); equal indices must
    // keep equal signs (a +a/-a pair cancels and can be dropped, so such
    // branches are redundant).
    bool dfs(std::size_t t, const Int& residual) {
        if (budget-- == 0) throw std::runtime_error("tail-sum search budget exceeded; lower depth_cap or index_cap");
        if (residual == 0) return true;
        if (t == depth_cap) return false;
        std::size_t lo = std::max<std::size_t>(nbhd.slot(t), first);
        if (!chosen.empty()) lo = std::max(lo, chosen.back().first);
        if (lo >= first + terms.size()) return false;
        // Dominance bound: all remaining slots together cannot move the
        // sum by more than (depth_cap - t) * max|term|.
        Int max_term = terms.back();
        if (abs(residual) > Int(static_cast<unsigned long>(depth_cap - t)) * max_term)
            return false;
        for (std::size_t n = lo; n < first + terms.size(); ++n) {
            const Int& v = terms[n - first];
            for (int s : {+1, -1}) {
                if (!chosen.empty() && chosen.back().first == n) {
                    bool prev_pos = chosen.back().second > 0;
                    if (prev_pos != (s > 0)) continue;
                }
                Int term = s > 0 ? v : Int(-v);
                chosen.emplace_back(n, term);
                if (dfs(t + 1, Int(residual - term))) return true;
                chosen.pop_back();
            }
        }
        return false;
    }
};

}  // namespace

TailSumResult member_nbhd_int(const IntSeq& a, const TailSumQuery& q) {
    if (q.depth_cap < 1) throw std::invalid_argument("depth cap must be >= 1");
    if (q.index_cap <= a.first_index())
        throw std::invalid_argument("index cap must exceed the sequence's first index");
    std::size_t first = std::max(a.first_index(), q.nbhd.slot(0));
    if (first >= q.index_cap) return {q.target == 0, {}};

    std::vector<Int> terms;
    terms.reserve(q.index_cap - first);
    Int prev;
    for (std::size_t n = first; n < q.index_cap; ++n) {
        Int v = a(n);
        if (v <= 0 || (!terms.empty() && v <= prev))
            throw std::invalid_argument("sequence must be strictly increasing and positive");
        prev = v;
        terms.push_back(std::move(v));
    }

    if (q.target == 0) return {true, {}};

    // Every available term is a multiple of the tail gcd; if the target is
    // not, no depth can reach it.
    Int g = 0;
    for (const Int& v : terms) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1 && mod_floor(q.target, g) != 0) return {false, {}};

    TailSearch search{terms, first, q.nbhd, q.depth_cap, q.node_budget, {}};
    if (search.dfs(0, q.target)) return {true, std::move(search.chosen)};
    return {false, {}};
}

std::vector<std::pair<std::size_t, std::size_t>> sup_witness_pairs(const IntSeq& a,
                                                                   const IntSeq& b, const Int& g,
                                                                   std::size_t N) {
    if (g == 0) throw std::invalid_argument("g must be non-zero");
    std::map<Int, std::vector<std::size_t>> index_of_a;
    for (std::size_t n = a.first_index(); n <= N; ++n) index_of_a[a(n)].push_back(n);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t m = b.first_index(); m <= N; ++m) {
        auto it = index_of_a.find(Int(b(m) - g));
        if (it == index_of_a.end()) continue;
        for (std::size_t n : it->second) pairs.emplace_back(n, m);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

WitnessReport diagonal_escape_report(const IntSeq& a, const IntSeq& b, const Int& g,
                                     std::size_t N) {
    auto pairs = sup_witness_pairs(a, b, g, N);

    WitnessReport report;
    report.claim = "diagonal-escape";
    report.params["a"] = a.label();
    report.params["b"] = b.label();
    report.params["g"] = g.get_str();
    report.params["N"] = std::to_string(N);
    report.bounds = "pairs searched over indices <= " + std::to_string(N);
    report.evidence_columns = {"n0", "n", "m"};

    // For each n0 the witness must have both coordinates >= n0, so the
    // relevant quantity is the best min(n, m) over all pairs.
    std::size_t best_min = 0;
    bool any = false;
    std::pair<std::size_t, std::size_t> best_pair{0, 0};
    for (const auto& [n, m] : pairs) {
        std::size_t mn = std::min(n, m);
        if (!any || mn > best_min) {
            best_min = mn;
            best_pair = {n, m};
            any = true;
        }
    }

    for (std::size_t n0 = 1; n0 <= N; n0 = n0 * 2) {
        std::optional<std::pair<std::size_t, std::size_t>> found;
        for (const auto& [n, m] : pairs)
            if (n >= n0 && m >= n0) { found = {n, m}; break; }
        if (found)
            report.evidence.push_back(
                {std::to_string(n0), std::to_string(found->first), std::to_string(found->second)});
    }

    if (any && best_min >= N) {
        report.verdict = Verdict::certified;
        report.evidence.push_back({std::to_string(N), std::to_string(best_pair.first),
                                   std::to_string(best_pair.second)});
    } else {
        report.verdict = Verdict::inconclusive;
        report.notes.push_back(any ? "largest pair min(n,m) = " + std::to_string(best_min)
                                   : "no witness pairs in range");
    }
    report.params["pair_count"] = std::to_string(pairs.size());
    return report;
}

}  // namespace tseq::topo
