#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tseq/numeric.hpp"
#include "tseq/zbase.hpp"

namespace tseq::tracker {

/// Strictly increasing growth target f : N>=1 -> N>=1. Strictness is
/// enforced lazily: operations that consume differences raise
/// "growth violation" when f fails to increase at the probed point.
class GrowthFn {
public:
    static GrowthFn poly(unsigned long degree);       // n^degree
    static GrowthFn exp_poly(const Rat& r);           // floor(r^n) + n^2, r > 1
    static GrowthFn pow(const Rat& r);                // floor(r^n)
    static GrowthFn table(std::vector<Int> values);   // explicit f(1..N)

    Int operator()(std::size_t n) const;              // n >= 1
    const std::string& label() const { return label_; }

private:
    GrowthFn(std::string label, std::function<Int(std::size_t)> eval);
    std::string label_;
    std::function<Int(std::size_t)> eval_;
};

/// Slack allowance eps : N>=1 -> Q>=0.
struct EpsFn {
    enum class Kind { paper_default, linear, constant };
    Kind kind = Kind::paper_default;
    Rat value;  // for Kind::constant

    static EpsFn paper_default() { return {Kind::paper_default, Rat(0)}; }
    static EpsFn linear() { return {Kind::linear, Rat(0)}; }
    static EpsFn constant(const Rat& c);

    std::string label() const;
};

struct TrackerSpec {
    GrowthFn f;
    EpsFn eps;
    std::optional<zbase::NeighborhoodBase> base;
    std::size_t level_cap = 64;   // level search cap for character bases
    std::size_t horizon = 0;      // suggested N (0 = unset)
};

struct TrackedEntry {
    std::size_t n;
    Int f;
    Rat eps;
    Int a;
    std::size_t k;
    bool cap_limited;  // level search hit its cap without a certificate
};

struct TrackedSeq {
    std::vector<TrackedEntry> entries;
    std::string f_label;
    std::string eps_label;
    nlohmann::json base_config;

    std::vector<Int> values() const;
};

/// eps(1) = 0; for n > 1 exactly
/// (1/2) * min{ isqrt(f(n)), f(n+1)-f(n), f(n)-f(n-1) }.
Rat default_epsilon(const GrowthFn& f, std::size_t n);

/// eps evaluated per the spec's kind (paper_default consults f).
Rat eval_epsilon(const TrackerSpec& spec, std::size_t n);

/// For each n <= N picks the deepest level k(n) whose neighborhood meets
/// [f(n)-eps(n), f(n)+eps(n)] and a point a_n of that intersection closest
/// to f(n) (smaller value on distance ties). Exact throughout.
TrackedSeq track(const TrackerSpec& spec, std::size_t N);

struct RatioEntry {
    std::size_t n;
    Rat deviation;  // |a_n/f(n) - 1|
    Rat bound;      // eps(n)/f(n)
};

std::vector<RatioEntry> tracking_ratio_profile(const TrackedSeq& seq);

struct GapGridEntry {
    Int c;
    std::size_t count;          // gaps <= c in the whole prefix
    std::optional<std::size_t> last_pos;  // position of the last such gap
    bool persists;              // such a gap occurs in the final block
};

struct GapStats {
    std::size_t window;
    std::vector<std::pair<std::size_t, Int>> block_min;  // (block index, min gap)
    std::vector<GapGridEntry> grid;
    bool violation_evidence;    // some grid bound persists into the final block
};

/// Per-block minima of consecutive gaps plus bounded-gap counts for each
/// grid bound. Finite evidence only; no infinite claim is made.
GapStats gap_stats(const std::vector<Int>& values, std::size_t window,
                   const std::vector<Int>& grid);

/// f(n) = floor(r^n) + n^2 with eps(n) = n, for exact rational r > 1.
/// The returned spec has no base attached; N is kept as the suggested
/// horizon.
TrackerSpec preset_remark2(const Rat& r, std::size_t N);

}  // namespace tseq::tracker
