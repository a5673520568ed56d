#pragma once

#include <vector>

#include "tseq/numeric.hpp"

namespace tseq {

/// Exact element of the real quadratic field Q(sqrt(d)): value a + b*sqrt(d).
/// d must be a positive non-square, so the representation is unique and
/// all sign tests are decidable by rational arithmetic alone.
class QuadIrr {
public:
    QuadIrr(Rat a, Rat b, Int d);

    const Rat& rat_part() const { return a_; }
    const Rat& irr_part() const { return b_; }
    const Int& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }

    QuadIrr operator+(const QuadIrr& o) const;
    QuadIrr operator-(const QuadIrr& o) const;
    QuadIrr operator*(const QuadIrr& o) const;
    QuadIrr operator/(const QuadIrr& o) const;
    QuadIrr operator-() const;

    QuadIrr scale(const Rat& c) const;
    QuadIrr shift(const Rat& c) const;

    /// Sign of the real value: -1, 0, or +1. Exact.
    int sign() const;

    /// Three-way comparison with a rational. Exact.
    int cmp(const Rat& w) const;

    /// Largest integer <= value.
    Int floor() const;

    /// Distance to the nearest integer, compared against delta:
    /// returns true iff dist(value, Z) < delta. Exact and strict.
    bool dist_to_int_lt(const Rat& delta) const;

    /// 1/value. Requires value != 0.
    QuadIrr reciprocal() const;

private:
    Rat a_, b_;
    Int d_;

    void check_compatible(const QuadIrr& o) const;
};

/// sqrt(d) as a QuadIrr. Throws if d is a perfect square or d <= 0.
QuadIrr quad_sqrt(const Int& d);

/// Continued fraction machinery over QuadIrr.
/// Partial quotients and convergents of an irrational alpha, computed
/// exactly; the expansion of a quadratic irrational is eventually periodic,
/// so coefficient sizes stay bounded.
struct Convergent {
    Int p, q;  // p/q
};

/// First `count` convergents of alpha (alpha must be irrational).
std::vector<Convergent> convergents(const QuadIrr& alpha, std::size_t count);

/// Smallest-index convergent denominator q with dist(q*alpha, Z) < bound,
/// together with that distance witness |q*alpha - p|.
struct SmallDenominator {
    Int q;
    Int p;
};
SmallDenominator first_good_denominator(const QuadIrr& alpha, const Rat& bound);

/// Value of an eventually periodic continued fraction
/// [head...; period...] repeated forever. The period must be nonempty
/// (otherwise the value is rational). All terms after the first must be >= 1.
QuadIrr cf_value(const std::vector<Int>& head, const std::vector<Int>& period);

}  // namespace tseq
