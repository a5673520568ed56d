#include "tseq/ringseq.hpp"

#include <stdexcept>

namespace tseq::ringseq {

RatioTarget::RatioTarget(const Rat& r) : r_(r) {
    r_.canonicalize();
    if (r_ <= 1) throw std::invalid_argument("r must be > 1");
}

Int floor_pow(const RatioTarget& r, std::size_t n) {
    unsigned long e = static_cast<unsigned long>(n);
    return floor_div(pow_int(r.value().get_num(), e), pow_int(r.value().get_den(), e));
}

bool is_special_index(std::size_t n) {
    if (n % 2 != 0) return false;
    std::size_t m = n / 2;
    if (m < 3) return false;  // k >= 1, so n/2 = 3^k >= 3
    while (m % 3 == 0) m /= 3;
    return m == 1;
}

const Int& RingSeq::at(std::size_t n) const {
    if (n < 1 || n > values.size()) throw std::out_of_range("sequence index out of range");
    return values[n - 1];
}

RingSeq gen_theorem2(const RatioTarget& r, std::size_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    RingSeq seq{r, {}, {}};
    seq.values.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        if (is_special_index(n)) {
            Int half = floor_pow(r, n / 2);
            seq.values.push_back(half * half + 1);
            seq.special_indices.insert(n);
        } else {
            seq.values.push_back(floor_pow(r, n));
        }
    }
    return seq;
}

std::vector<ObstructionWitness> obstruction_witnesses(const RingSeq& seq, std::size_t Kmax) {
    if (Kmax < 1) throw std::invalid_argument("Kmax must be >= 1");
    std::vector<ObstructionWitness> out;
    std::size_t pow3 = 3;
    for (std::size_t k = 1; k <= Kmax; ++k) {
        std::size_t special = 2 * pow3;
        if (special > seq.size())
            throw std::out_of_range("index 2*3^k exceeds the generated range");
        Int diff = seq.at(special) - seq.at(pow3) * seq.at(pow3);
        out.push_back({k, diff});
        pow3 *= 3;
    }
    return out;
}

RatioProfile ratio_profile(const RingSeq& seq, std::size_t from, std::size_t to) {
    if (!(1 <= from && from < to && to <= seq.size()))
        throw std::out_of_range("need 1 <= from < to <= N");
    const Rat& r = seq.r.value();
    RatioProfile profile;
    profile.max_deviation = 0;
    RatioBlock* cur = nullptr;
    std::size_t cur_j = 0;
    for (std::size_t n = from; n < to; ++n) {
        if (seq.at(n) == 0) throw std::domain_error("zero denominator in ratio");
        Rat dev = abs_rat(make_rat(seq.at(n + 1), seq.at(n)) - r);
        profile.max_deviation = std::max(profile.max_deviation, dev);
        std::size_t j = 0;
        while ((std::size_t{1} << (j + 1)) <= n) ++j;
        if (cur == nullptr || cur_j != j) {
            profile.blocks.push_back({j, dev, false});
            cur = &profile.blocks.back();
            cur_j = j;
        } else {
            cur->max_deviation = std::max(cur->max_deviation, dev);
        }
        bool near_special = is_special_index(n) || is_special_index(n + 1) ||
                            (n >= 2 && is_special_index(n - 1));
        if (near_special) cur->touches_special = true;
    }
    return profile;
}

}  // namespace tseq::ringseq
