#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tseq/numeric.hpp"

namespace tseq {

/// An integer sequence with a provenance label. Terms are computed on
/// demand through a pure closure, so sharing an IntSeq across threads is
/// safe. Indexing starts at first_index() (0 for the formula presets,
/// 1 for materialized tracker/ring sequences).
class IntSeq {
public:
    IntSeq(std::string label, std::size_t first_index, std::function<Int(std::size_t)> eval);

    const std::string& label() const { return label_; }
    std::size_t first_index() const { return first_; }

    /// n-th term; n must be >= first_index().
    Int operator()(std::size_t n) const;

    /// Terms first_index()..last inclusive.
    std::vector<Int> prefix(std::size_t last) const;

    /// a_n = 2^n, n >= 0.
    static IntSeq pow2();

    /// a_n = floor(r^n), n >= 0, for exact rational r.
    static IntSeq pow(const Rat& r);

    /// a_n = n, n >= 0.
    static IntSeq identity();

    /// a_n = n^degree, n >= 0.
    static IntSeq poly(unsigned long degree);

    /// base_n + c.
    static IntSeq shifted(IntSeq base, const Int& c);

    /// Materialized values v[0..] mapped to indices first, first+1, ...
    static IntSeq from_values(std::string label, std::vector<Int> values, std::size_t first);

private:
    std::string label_;
    std::size_t first_;
    std::function<Int(std::size_t)> eval_;
};

}  // namespace tseq
