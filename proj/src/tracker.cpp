#include "tseq/tracker.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace tseq::tracker {

GrowthFn::GrowthFn(std::string label, std::function<Int(std::size_t)> eval)
    : label_(std::move(label)), eval_(std::move(eval)) {}

GrowthFn GrowthFn::poly(unsigned long degree) {
    if (degree == 0) throw std::invalid_argument("degree must be >= 1");
    return GrowthFn("n^" + std::to_string(degree), [degree](std::size_t n) {
        return pow_int(Int(static_cast<unsigned long>(n)), degree);
    });
}

GrowthFn GrowthFn::exp_poly(const Rat& r) {
    if (r <= 1) throw std::invalid_argument("r must be > 1");
    Int p = r.get_num(), q = r.get_den();
    return GrowthFn("(" + fraction_str(r) + ")^n+n^2", [p, q](std::size_t n) -> Int {
        unsigned long e = static_cast<unsigned long>(n);
        return floor_div(pow_int(p, e), pow_int(q, e)) + Int(e) * Int(e);
    });
}

GrowthFn GrowthFn::pow(const Rat& r) {
    if (r <= 1) throw std::invalid_argument("r must be > 1");
    Int p = r.get_num(), q = r.get_den();
    return GrowthFn("(" + fraction_str(r) + ")^n", [p, q](std::size_t n) {
        unsigned long e = static_cast<unsigned long>(n);
        return floor_div(pow_int(p, e), pow_int(q, e));
    });
}

GrowthFn GrowthFn::table(std::vector<Int> values) {
    if (values.empty()) throw std::invalid_argument("table must be nonempty");
    auto store = std::make_shared<std::vector<Int>>(std::move(values));
    return GrowthFn("table[" + std::to_string(store->size()) + "]", [store](std::size_t n) {
        if (n < 1 || n > store->size()) throw std::out_of_range("growth table exhausted");
        return (*store)[n - 1];
    });
}

Int GrowthFn::operator()(std::size_t n) const {
    if (n < 1) throw std::out_of_range("growth functions are defined for n >= 1");
    return eval_(n);
}

EpsFn EpsFn::constant(const Rat& c) {
    if (c < 0) throw std::invalid_argument("eps must be nonnegative");
    return {Kind::constant, c};
}

std::string EpsFn::label() const {
    switch (kind) {
        case Kind::paper_default: return "default";
        case Kind::linear: return "n";
        case Kind::constant: return fraction_str(value);
    }
    return "?";
}

Rat default_epsilon(const GrowthFn& f, std::size_t n) {
    if (n < 1) throw std::out_of_range("n must be >= 1");
    if (n == 1) return Rat(0);
    Int fn = f(n), fprev = f(n - 1), fnext = f(n + 1);
    if (!(fprev < fn && fn < fnext)) throw std::domain_error("growth violation");
    Int m = isqrt(fn);
    m = std::min(m, Int(fnext - fn));
    m = std::min(m, Int(fn - fprev));
    return make_rat(m, 2);
}

Rat eval_epsilon(const TrackerSpec& spec, std::size_t n) {
    switch (spec.eps.kind) {
        case EpsFn::Kind::paper_default: return default_epsilon(spec.f, n);
        case EpsFn::Kind::linear: return Rat(static_cast<unsigned long>(n));
        case EpsFn::Kind::constant: return spec.eps.value;
    }
    throw std::logic_error("bad eps kind");
}

std::vector<Int> TrackedSeq::values() const {
    std::vector<Int> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.a);
    return out;
}

namespace {

// Nearest multiple of d to f inside [lo, hi] (all positive, a multiple
// exists); smaller value wins distance ties.
Int pick_multiple(const Int& d, const Int& f, const Int& lo, const Int& hi) {
    Int mlo = -floor_div(-lo, d);  // ceil(lo/d)
    Int mhi = floor_div(hi, d);
    Int t = floor_div(f, d);
    Int lo_mult = mlo * d, hi_mult = mhi * d;
    Int below = std::clamp(Int(t * d), lo_mult, hi_mult);
    Int above = std::clamp(Int((t + 1) * d), lo_mult, hi_mult);
    Int dist_below = abs(below - f), dist_above = abs(above - f);
    if (dist_below == dist_above) return std::min(below, above);
    return dist_below < dist_above ? below : above;
}

TrackedEntry track_one_moduli(const zbase::ModuliChain& chain, std::size_t n, const Int& f,
                              const Rat& eps, const Int& lo, const Int& hi) {
    // Levels above the largest d <= hi cannot meet a positive interval
    // below d, so the search down from there is certified. If the chain
    // runs out before a divisor exceeds hi, an achieved k at the cap is
    // not a certificate and the entry is flagged.
    std::size_t cap = 0;
    while (cap + 1 < chain.depth() && chain.divisor(cap + 1) <= hi) ++cap;
    bool chain_exhausted = (cap + 1 == chain.depth());
    for (std::size_t i = cap + 1; i-- > 0;) {
        const Int& d = chain.divisor(i);
        Int mlo = -floor_div(-lo, d);
        Int mhi = floor_div(hi, d);
        if (mlo <= mhi) {
            Int a = pick_multiple(d, f, lo, hi);
            return {n, f, eps, a, i, chain_exhausted && i == cap};
        }
    }
    throw std::logic_error("level 0 must meet the interval");
}

TrackedEntry track_one_character(const zbase::CharacterBase& cb, std::size_t level_cap,
                                 std::size_t n, const Int& f, const Rat& eps, const Int& lo,
                                 const Int& hi) {
    std::size_t cap = std::min(level_cap, cb.depth() - 1);
    bool found = false;
    std::size_t best_k = 0;
    Int best_a = 0, best_dist = 0;
    for (Int x = lo; x <= hi; ++x) {
        std::size_t lvl = 0;
        while (lvl < cap && cb.member(lvl + 1, x)) ++lvl;
        Int dist = abs(x - f);
        if (!found || lvl > best_k || (lvl == best_k && dist < best_dist)) {
            found = true;
            best_k = lvl;
            best_a = x;
            best_dist = dist;
        }
    }
    if (!found) throw std::logic_error("empty tracking interval");
    return {n, f, eps, best_a, best_k, best_k == cap};
}

}  // namespace

TrackedSeq track(const TrackerSpec& spec, std::size_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (!spec.base) throw std::invalid_argument("tracker spec has no base attached");
    TrackedSeq out;
    out.f_label = spec.f.label();
    out.eps_label = spec.eps.label();
    out.base_config = spec.base->to_json();
    out.entries.reserve(N);
    Int prev_f;
    for (std::size_t n = 1; n <= N; ++n) {
        Int f = spec.f(n);
        if (n > 1 && !(prev_f < f)) throw std::domain_error("growth violation");
        prev_f = f;
        Rat eps = eval_epsilon(spec, n);
        if (eps < 0) throw std::domain_error("empty interval: eps(n) < 0");
        if (Rat(f) - eps <= 0)
            throw std::domain_error("tracking interval reaches zero; no maximal level exists");
        Int lo = ceil_rat(Rat(f) - eps);
        Int hi = floor_rat(Rat(f) + eps);
        if (spec.base->is_moduli()) {
            out.entries.push_back(track_one_moduli(spec.base->moduli(), n, f, eps, lo, hi));
        } else {
            out.entries.push_back(
                track_one_character(spec.base->character(), spec.level_cap, n, f, eps, lo, hi));
        }
    }
    return out;
}

std::vector<RatioEntry> tracking_ratio_profile(const TrackedSeq& seq) {
    if (seq.entries.empty()) throw std::invalid_argument("empty tracked sequence");
    std::vector<RatioEntry> out;
    out.reserve(seq.entries.size());
    for (const auto& e : seq.entries) {
        if (e.f <= 0) throw std::domain_error("f(n) must be positive");
        Rat dev = abs_rat(make_rat(e.a, e.f) - 1);
        Rat bound = e.eps / Rat(e.f);
        out.push_back({e.n, dev, bound});
    }
    return out;
}

GapStats gap_stats(const std::vector<Int>& values, std::size_t window,
                   const std::vector<Int>& grid) {
    if (values.size() < 2) throw std::invalid_argument("need at least two values");
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    std::vector<Int> gaps;
    gaps.reserve(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1]))
            throw std::invalid_argument("sequence must be strictly increasing");
        gaps.push_back(values[i + 1] - values[i]);
    }

    GapStats stats;
    stats.window = window;
    std::size_t nblocks = (gaps.size() + window - 1) / window;
    for (std::size_t j = 0; j < nblocks; ++j) {
        std::size_t b = j * window, e = std::min(gaps.size(), b + window);
        Int m = gaps[b];
        for (std::size_t i = b + 1; i < e; ++i) m = std::min(m, gaps[i]);
        stats.block_min.emplace_back(j, m);
    }
    std::size_t final_block_start = (nblocks - 1) * window;
    stats.violation_evidence = false;
    for (const Int& c : grid) {
        GapGridEntry entry{c, 0, std::nullopt, false};
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            if (gaps[i] <= c) {
                ++entry.count;
                entry.last_pos = i;
            }
        }
        entry.persists = entry.last_pos && *entry.last_pos >= final_block_start;
        stats.violation_evidence = stats.violation_evidence || entry.persists;
        stats.grid.push_back(std::move(entry));
    }
    return stats;
}

TrackerSpec preset_remark2(const Rat& r, std::size_t N) {
    if (r <= 1) throw std::invalid_argument("r must be > 1");
    TrackerSpec spec{GrowthFn::exp_poly(r), EpsFn::linear(), std::nullopt, 64, N};
    return spec;
}

}  // namespace tseq::tracker
