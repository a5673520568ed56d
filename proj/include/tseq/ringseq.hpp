#pragma once

#include <set>
#include <vector>

#include "tseq/numeric.hpp"

namespace tseq::ringseq {

/// Exact rational ratio target r = p/q > 1.
class RatioTarget {
public:
    explicit RatioTarget(const Rat& r);
    const Rat& value() const { return r_; }

private:
    Rat r_;
};

/// Exact floor(r^n) via integer division p^n div q^n.
Int floor_pow(const RatioTarget& r, std::size_t n);

/// n is special iff n = 2*3^k for some k >= 1, i.e. n is even and n/2 is
/// a power of 3 that is at least 3.
bool is_special_index(std::size_t n);

/// a_1..a_N with a_n = floor(r^(n/2))^2 + 1 at special indices and
/// floor(r^n) elsewhere.
struct RingSeq {
    RatioTarget r;
    std::vector<Int> values;               // values[i] = a_{i+1}
    std::set<std::size_t> special_indices;

    std::size_t size() const { return values.size(); }
    const Int& at(std::size_t n) const;    // 1-based
};

RingSeq gen_theorem2(const RatioTarget& r, std::size_t N);

struct ObstructionWitness {
    std::size_t k;
    Int value;  // a_{2*3^k} - a_{3^k}^2
};

/// The values a_{2*3^k} - a_{3^k}^2 for k = 1..Kmax; the obstruction is
/// certified iff every value equals 1.
std::vector<ObstructionWitness> obstruction_witnesses(const RingSeq& seq, std::size_t Kmax);

struct RatioBlock {
    std::size_t j;          // dyadic block [2^j, 2^(j+1))
    Rat max_deviation;
    bool touches_special;   // block comes within one step of a special index
};

struct RatioProfile {
    Rat max_deviation;                 // max over n in [from, to)
    std::vector<RatioBlock> blocks;    // dyadic envelope within [from, to)
};

/// Max over n in [from, to) of |a_{n+1}/a_n - r|, exact, with a dyadic
/// block envelope as convergence evidence.
RatioProfile ratio_profile(const RingSeq& seq, std::size_t from, std::size_t to);

}  // namespace tseq::ringseq
