#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "tseq/numeric.hpp"

namespace tseq {

/// Finitely supported integer vector: a sparse index -> coefficient map.
/// Zero coefficients are never stored, so equal vectors have identical
/// maps and iteration is always in ascending index order.
class FinVec {
public:
    FinVec() = default;

    /// Unit vector at index i.
    static FinVec unit(std::size_t i);

    /// c * e_i (no-op for c = 0).
    static FinVec scaled_unit(std::size_t i, const Int& c);

    const std::map<std::size_t, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient at index i (0 when absent).
    Int at(std::size_t i) const;

    void add_term(std::size_t i, const Int& c);

    FinVec operator+(const FinVec& o) const;
    FinVec operator-(const FinVec& o) const;
    FinVec operator-() const;
    bool operator==(const FinVec& o) const = default;

    /// Sum of |coefficients|.
    Int norm1() const;

    /// Text form "3e0-2e7"; "0" for the zero vector.
    std::string str() const;

    /// Parses "3e0-2e7" style text. Terms with the same index are summed;
    /// zero net coefficients are dropped. Malformed input raises
    /// std::invalid_argument with the offending position.
    static FinVec parse(const std::string& text);

    /// JSON form [[index, "coeff"], ...] with decimal-string coefficients.
    nlohmann::json to_json() const;
    static FinVec from_json(const nlohmann::json& j);

private:
    std::map<std::size_t, Int> coeffs_;
};

}  // namespace tseq
