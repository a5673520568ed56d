#include "tseq/quadirr.hpp"

#include <stdexcept>

namespace tseq {

namespace {

int sign_of(const Rat& q) {
    return sgn(q);
}

}  // namespace

QuadIrr::QuadIrr(Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ <= 0) throw std::invalid_argument("radicand must be positive");
    Int s = isqrt(d_);
    if (s * s == d_) {
        // Perfect square: fold sqrt(d) into the rational part.
        a_ += b_ * Rat(s);
        b_ = 0;
    }
}

void QuadIrr::check_compatible(const QuadIrr& o) const {
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
        throw std::invalid_argument("mixed radicands in quadratic arithmetic");
}

QuadIrr QuadIrr::operator+(const QuadIrr& o) const {
    check_compatible(o);
    return QuadIrr(a_ + o.a_, b_ + o.b_, b_ != 0 ? d_ : o.d_);
}

QuadIrr QuadIrr::operator-(const QuadIrr& o) const {
    return *this + (-o);
}

QuadIrr QuadIrr::operator-() const {
    return QuadIrr(-a_, -b_, d_);
}

QuadIrr QuadIrr::operator*(const QuadIrr& o) const {
    check_compatible(o);
    const Int& d = b_ != 0 ? d_ : o.d_;
    return QuadIrr(a_ * o.a_ + b_ * o.b_ * Rat(d), a_ * o.b_ + b_ * o.a_, d);
}

QuadIrr QuadIrr::operator/(const QuadIrr& o) const {
    return *this * o.reciprocal();
}

QuadIrr QuadIrr::scale(const Rat& c) const {
    return QuadIrr(a_ * c, b_ * c, d_);
}

QuadIrr QuadIrr::shift(const Rat& c) const {
    return QuadIrr(a_ + c, b_, d_);
}

int QuadIrr::sign() const {
    int su = sign_of(a_), sv = sign_of(b_);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Opposite signs: compare a^2 with b^2*d. Equality would make sqrt(d)
    // rational, which the constructor rules out.
    Rat lhs = a_ * a_, rhs = b_ * b_ * Rat(d_);
    if (su > 0) return lhs > rhs ? 1 : -1;
    return rhs > lhs ? 1 : -1;
}

int QuadIrr::cmp(const Rat& w) const {
    return QuadIrr(a_ - w, b_, d_).sign();
}

Int QuadIrr::floor() const {
    // Write the value as (A + B*sqrt(d))/C with integer A, B and C > 0.
    Int qa = a_.get_den(), qb = b_.get_den();
    Int C = qa * qb;
    Int A = a_.get_num() * qb;
    Int B = b_.get_num() * qa;
    if (B == 0) return floor_div(A, C);
    Int N = B * B * d_;
    Int t = isqrt(N);  // sqrt(N) lies strictly between t and t+1
    if (B > 0) return floor_div(A + t, C);
    return floor_div(A - t - 1, C);
}

bool QuadIrr::dist_to_int_lt(const Rat& delta) const {
    if (delta <= 0) return false;
    Int m = floor();
    // dist < delta  iff  value < m + delta  or  value > m + 1 - delta.
    if (cmp(Rat(m) + delta) < 0) return true;
    return cmp(Rat(m) + 1 - delta) > 0;
}

QuadIrr QuadIrr::reciprocal() const {
    Rat denom = a_ * a_ - b_ * b_ * Rat(d_);
    if (denom == 0) {
        if (b_ == 0 && a_ == 0) throw std::domain_error("reciprocal of zero");
        throw std::domain_error("degenerate quadratic element");
    }
    return QuadIrr(a_ / denom, -b_ / denom, d_);
}

QuadIrr quad_sqrt(const Int& d) {
    return QuadIrr(Rat(0), Rat(1), d);
}

std::vector<Convergent> convergents(const QuadIrr& alpha, std::size_t count) {
    if (alpha.is_rational())
        throw std::invalid_argument("continued fraction expansion requires an irrational value");
    std::vector<Convergent> out;
    out.reserve(count);
    Int p_prev = 1, p_prev2 = 0;
    Int q_prev = 0, q_prev2 = 1;
    QuadIrr cur = alpha;
    for (std::size_t k = 0; k < count; ++k) {
        Int t = cur.floor();
        Int p = t * p_prev + p_prev2;
        Int q = t * q_prev + q_prev2;
        out.push_back({p, q});
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;
        cur = (cur.shift(Rat(-t))).reciprocal();
    }
    return out;
}

SmallDenominator first_good_denominator(const QuadIrr& alpha, const Rat& bound) {
    if (bound <= 0) throw std::invalid_argument("bound must be positive");
    Int p_prev = 1, p_prev2 = 0;
    Int q_prev = 0, q_prev2 = 1;
    QuadIrr cur = alpha;
    // ||q_k alpha|| < 1/q_{k+1} -> 0, so this terminates.
    for (;;) {
        Int t = cur.floor();
        Int p = t * p_prev + p_prev2;
        Int q = t * q_prev + q_prev2;
        if (q > 0) {
            QuadIrr qa = alpha.scale(Rat(q));
            if (qa.dist_to_int_lt(bound)) {
                Int m = qa.floor();
                Int nearest = qa.cmp(Rat(m) + Rat(1, 2)) < 0 ? m : Int(m + 1);
                return {q, nearest};
            }
        }
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;
        cur = (cur.shift(Rat(-t))).reciprocal();
    }
}

QuadIrr cf_value(const std::vector<Int>& head, const std::vector<Int>& period) {
    if (period.empty())
        throw std::invalid_argument("continued fraction period must be nonempty");
    for (const Int& b : period)
        if (b < 1) throw std::invalid_argument("continued fraction terms after the first must be >= 1");
    for (std::size_t i = 1; i < head.size(); ++i)
        if (head[i] < 1) throw std::invalid_argument("continued fraction terms after the first must be >= 1");

    // Moebius matrix of one period: y = (P y + Q)/(R y + S).
    Int P = 1, Q = 0, R = 0, S = 1;
    for (const Int& b : period) {
        Int np = P * b + Q, nq = P;
        Int nr = R * b + S, ns = R;
        P = np; Q = nq; R = nr; S = ns;
    }
    // Fixed point: R y^2 + (S - P) y - Q = 0, take the positive root.
    Int disc = (S - P) * (S - P) + 4 * R * Q;
    if (disc <= 0) throw std::invalid_argument("degenerate continued fraction period");
    QuadIrr y = quad_sqrt(disc).shift(Rat(P - S)).scale(make_rat(1, 2 * R));

    QuadIrr cur = y;
    for (std::size_t i = head.size(); i-- > 0;)
        cur = cur.reciprocal().shift(Rat(head[i]));
    return cur;
}

}  // namespace tseq
