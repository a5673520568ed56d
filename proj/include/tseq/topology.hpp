#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tseq/finvec.hpp"
#include "tseq/intseq.hpp"
#include "tseq/numeric.hpp"
#include "tseq/report.hpp"

namespace tseq::topo {

/// Basic neighborhood of zero described by a nondecreasing, eventually
/// constant slot sequence m_0 <= m_1 <= ... : slot j accepts terms drawn
/// from {0} union {+-a_n : n >= m_j}. Encoded canonically as steps
/// (start_slot, value) with the last value repeating forever.
class CanonicalNbhd {
public:
    /// From explicit leading values; the last value repeats for all later
    /// slots. Values must be nondecreasing.
    explicit CanonicalNbhd(const std::vector<std::size_t>& leading_values);

    /// Constant slot sequence.
    static CanonicalNbhd constant(std::size_t value);

    /// Parses "2,2" or "0,2,5" (comma-separated leading values).
    static CanonicalNbhd parse(const std::string& text);

    std::size_t slot(std::size_t j) const;
    std::size_t final_value() const { return steps_.back().second; }
    const std::vector<std::pair<std::size_t, std::size_t>>& steps() const { return steps_; }

    /// Pointwise comparison: true iff this->slot(j) >= o.slot(j) for all j.
    bool dominates(const CanonicalNbhd& o) const;

    std::string str() const;

private:
    std::vector<std::pair<std::size_t, std::size_t>> steps_;  // canonical, no redundant steps
};

/// Exact membership of a finitely supported vector in V((m_j)): the
/// multiset holding each support index i with multiplicity |x_i| must
/// admit an injective assignment to slots j with m_j <= i. With sorted
/// units and nondecreasing slots this is the greedy/Hall condition:
/// the t-th smallest unit index must be >= m_t.
bool member_nbhd_free(const FinVec& x, const CanonicalNbhd& nbhd);

struct TailSumQuery {
    Int target;
    CanonicalNbhd nbhd;
    std::size_t depth_cap = 4;    // max number of summands
    std::size_t index_cap = 64;   // terms are drawn from a_n with n < index_cap
    std::size_t node_budget = 20'000'000;  // DFS node guard; exceeding it is an error
};

struct TailSumResult {
    bool member;
    // For member answers: the witness summands (index, term) with
    /// term = +-a_index, summing exactly to the target.
    std::vector<std::pair<std::size_t, Int>> summands;
};

/// Bounded search for x as a sum of at most depth_cap terms, the t-th
/// drawn from {0} union {+-a_n : m_t <= n < index_cap}. A negative answer
/// means "not member within the caps", not a topological negation.
TailSumResult member_nbhd_int(const IntSeq& a, const TailSumQuery& q);

/// All pairs (n, m) with n, m <= N and b_m - a_n = g, in lexicographic
/// order. g must be nonzero.
std::vector<std::pair<std::size_t, std::size_t>> sup_witness_pairs(const IntSeq& a,
                                                                   const IntSeq& b, const Int& g,
                                                                   std::size_t N);

/// Certified iff for every n0 <= N some witness pair has n, m >= n0.
/// Evidence lists one such pair per n0 in a doubling sample grid.
WitnessReport diagonal_escape_report(const IntSeq& a, const IntSeq& b, const Int& g,
                                     std::size_t N);

}  // namespace tseq::topo
