#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tseq/finvec.hpp"
#include "tseq/numeric.hpp"
#include "tseq/report.hpp"
#include "tseq/topology.hpp"

namespace tseq::freeab {

/// Coordinate moduli f : omega -> N>=1. The preset f(i) = v2(i+1) + 1 is
/// surjective with every fiber infinite (the fiber of n is the arithmetic
/// progression i + 1 = 2^(n-1) mod 2^n). User rules are periodic tables;
/// their range is the table's value set.
class FiberFn {
public:
    static FiberFn dyadic_valuation();
    static FiberFn periodic(std::vector<Int> table);

    Int operator()(std::size_t i) const;
    bool is_preset() const { return table_.empty(); }

    /// Whether value v is attained (infinitely often). For the preset this
    /// holds for every v >= 1; for a periodic table iff v appears in it.
    bool attains(const Int& v) const;

    std::string label() const;

private:
    std::vector<Int> table_;  // empty = dyadic-valuation preset
    explicit FiberFn(std::vector<Int> table) : table_(std::move(table)) {}
};

struct SubgroupH {
    FiberFn fiber;
};

/// Sum of |x_i|.
Int norm1(const FinVec& x);

/// x in H iff f(i) divides x_i for every support index.
bool in_H(const FinVec& x, const SubgroupH& H);

/// Splits an H-element into the parts supported on fibers <= n0 and > n0.
std::pair<FinVec, FinVec> split_H(const FinVec& x, const Int& n0, const SubgroupH& H);

/// x in U_n iff 2^n divides every coordinate.
bool in_Un(const FinVec& x, std::size_t n);

/// Exhaustively enumerates all vectors with norm1 <= n0 supported on
/// [0, window) and intersects with U_{n0}; certified iff only 0 survives.
WitnessReport ball_cap_Un(std::size_t n0, std::size_t window);

/// 0 followed by the first `count` vectors (n0+1)*e_i with f(i) = n0+1.
std::vector<FinVec> compact_witness(std::size_t n0, const FiberFn& fiber, std::size_t count);

/// The first `count` vectors 2^n * e_i lying in the neighborhood, i.e.
/// with member_nbhd_free(2^n e_i, nbhd); each is also in U_n.
std::vector<FinVec> nondiscrete_witness(std::size_t n, const topo::CanonicalNbhd& nbhd,
                                        std::size_t count);

}  // namespace tseq::freeab
