#include "tseq/intseq.hpp"

#include <stdexcept>
#include <utility>

namespace tseq {

IntSeq::IntSeq(std::string label, std::size_t first_index, std::function<Int(std::size_t)> eval)
    : label_(std::move(label)), first_(first_index), eval_(std::move(eval)) {}

Int IntSeq::operator()(std::size_t n) const {
    if (n < first_)
        throw std::out_of_range("sequence '" + label_ + "' starts at index " + std::to_string(first_));
    return eval_(n);
}

std::vector<Int> IntSeq::prefix(std::size_t last) const {
    std::vector<Int> out;
    if (last < first_) return out;
    out.reserve(last - first_ + 1);
    for (std::size_t n = first_; n <= last; ++n) out.push_back(eval_(n));
    return out;
}

IntSeq IntSeq::pow2() {
    return IntSeq("2^n", 0, [](std::size_t n) {
        Int v = 1;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), n);
        return v;
    });
}

IntSeq IntSeq::pow(const Rat& r) {
    if (r <= 0) throw std::invalid_argument("ratio must be positive");
    Int p = r.get_num(), q = r.get_den();
    std::string label = "(" + fraction_str(r) + ")^n";
    return IntSeq(label, 0, [p, q](std::size_t n) {
        unsigned long e = static_cast<unsigned long>(n);
        return floor_div(pow_int(p, e), pow_int(q, e));
    });
}

IntSeq IntSeq::identity() {
    return IntSeq("n", 0, [](std::size_t n) { return Int(static_cast<unsigned long>(n)); });
}

IntSeq IntSeq::poly(unsigned long degree) {
    if (degree == 0) throw std::invalid_argument("degree must be >= 1");
    std::string label = "n^" + std::to_string(degree);
    return IntSeq(label, 0, [degree](std::size_t n) {
        return pow_int(Int(static_cast<unsigned long>(n)), degree);
    });
}

IntSeq IntSeq::shifted(IntSeq base, const Int& c) {
    std::string label = base.label() + (c >= 0 ? "+" : "") + c.get_str();
    std::size_t first = base.first_index();
    auto inner = std::make_shared<IntSeq>(std::move(base));
    return IntSeq(label, first, [inner, c](std::size_t n) -> Int { return (*inner)(n) + c; });
}

IntSeq IntSeq::from_values(std::string label, std::vector<Int> values, std::size_t first) {
    if (values.empty()) throw std::invalid_argument("empty sequence");
    auto store = std::make_shared<std::vector<Int>>(std::move(values));
    return IntSeq(std::move(label), first, [store, first](std::size_t n) {
        std::size_t i = n - first;
        if (i >= store->size()) throw std::out_of_range("sequence index beyond materialized prefix");
        return (*store)[i];
    });
}

}  // namespace tseq
