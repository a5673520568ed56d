#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tseq/numeric.hpp"
#include "tseq/quadirr.hpp"

namespace tseq::zbase {

/// Neighborhood chain U_0 >= U_1 >= ... on Z where U_i = d_i * Z for a
/// divisibility chain d_0 = 1 | d_1 | d_2 | ...  Membership is exact
/// divisibility. d_0 = d_1 = 1 is allowed (factorial chains); from the
/// second entry on the divisors increase strictly.
class ModuliChain {
public:
    explicit ModuliChain(std::vector<Int> divisors);

    static ModuliChain padic(const Int& p, std::size_t depth);
    static ModuliChain factorial(std::size_t depth);

    std::size_t depth() const { return divisors_.size(); }
    const Int& divisor(std::size_t level) const;
    const std::vector<Int>& divisors() const { return divisors_; }

    bool member(std::size_t level, const Int& x) const;

private:
    std::vector<Int> divisors_;
};

/// Bohr-type chain U_i = { x in Z : dist(alpha*x, Z) < 2^-i } for an
/// irrational alpha. All membership decisions are exact. A rational alpha
/// would give a non-Hausdorff chain and is rejected at construction.
class CharacterBase {
public:
    CharacterBase(QuadIrr alpha, std::size_t depth);

    std::size_t depth() const { return depth_; }
    const QuadIrr& alpha() const { return alpha_; }

    /// Radius 2^-level of level's neighborhood.
    static Rat delta(std::size_t level);

    bool member(std::size_t level, const Int& x) const;

    /// Certified l with union over |s| < l of (s + U_level) = Z, from the
    /// first continued-fraction denominator q with dist(q*alpha, Z) below
    /// twice the level radius.
    Int cover_radius(std::size_t level) const;

private:
    QuadIrr alpha_;
    std::size_t depth_;
};

/// Uniform wrapper over the two base families. Values are immutable and
/// all operations are pure.
class NeighborhoodBase {
public:
    explicit NeighborhoodBase(ModuliChain chain);
    explicit NeighborhoodBase(CharacterBase character);

    static NeighborhoodBase from_json(const nlohmann::json& config);
    static NeighborhoodBase from_json_text(const std::string& text);
    nlohmann::json to_json() const;

    std::size_t depth() const;
    bool is_moduli() const { return moduli_.has_value(); }
    const ModuliChain& moduli() const;
    const CharacterBase& character() const;

    /// x in U_level? Exact; level must be < depth().
    bool member(std::size_t level, const Int& x) const;

    /// l such that the translates s + U_level, |s| < l, cover Z.
    Int cover_radius(std::size_t level) const;

    /// Smallest level i <= depth_cap with x not in U_i, or nullopt when the
    /// searched prefix of the chain never separates x. x must be nonzero.
    std::optional<std::size_t> separation_level(const Int& x, std::size_t depth_cap) const;

    std::string describe() const;

private:
    std::optional<ModuliChain> moduli_;
    std::optional<CharacterBase> character_;
    nlohmann::json config_;

    NeighborhoodBase() = default;
};

}  // namespace tseq::zbase
