#include "tseq/freeab.hpp"

#include <functional>
#include <stdexcept>

namespace tseq::freeab {

FiberFn FiberFn::dyadic_valuation() {
    return FiberFn({});
}

FiberFn FiberFn::periodic(std::vector<Int> table) {
    if (table.empty()) throw std::invalid_argument("fiber table must be nonempty");
    for (const Int& v : table)
        if (v < 1) throw std::invalid_argument("fiber values must be >= 1");
    return FiberFn(std::move(table));
}

Int FiberFn::operator()(std::size_t i) const {
    if (!table_.empty()) return table_[i % table_.size()];
    unsigned long v = mpz_scan1(Int(static_cast<unsigned long>(i) + 1).get_mpz_t(), 0);
    return Int(v + 1);
}

bool FiberFn::attains(const Int& v) const {
    if (v < 1) return false;
    if (table_.empty()) return true;
    for (const Int& t : table_)
        if (t == v) return true;
    return false;
}

std::string FiberFn::label() const {
    if (table_.empty()) return "dyadic-valuation";
    std::string out = "periodic[";
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) out += ",";
        out += table_[i].get_str();
    }
    return out + "]";
}

Int norm1(const FinVec& x) {
    return x.norm1();
}

bool in_H(const FinVec& x, const SubgroupH& H) {
    for (const auto& [i, c] : x.coeffs()) {
        Int f = H.fiber(i);
        if (!mpz_divisible_p(c.get_mpz_t(), f.get_mpz_t())) return false;
    }
    return true;
}

std::pair<FinVec, FinVec> split_H(const FinVec& x, const Int& n0, const SubgroupH& H) {
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    if (!in_H(x, H)) throw std::invalid_argument("vector is not in H");
    FinVec low, high;
    for (const auto& [i, c] : x.coeffs()) {
        if (H.fiber(i) <= n0) low.add_term(i, c);
        else high.add_term(i, c);
    }
    return {low, high};
}

bool in_Un(const FinVec& x, std::size_t n) {
    Int modulus = pow_int(2, static_cast<unsigned long>(n));
    for (const auto& [i, c] : x.coeffs())
        if (!mpz_divisible_p(c.get_mpz_t(), modulus.get_mpz_t())) return false;
    return true;
}

WitnessReport ball_cap_Un(std::size_t n0, std::size_t window) {
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (n0 * window > 64) throw std::invalid_argument("window too large");

    WitnessReport report;
    report.claim = "dyadic-ball-cap";
    report.params["n0"] = std::to_string(n0);
    report.params["window"] = std::to_string(window);
    report.bounds = "all vectors with norm1 <= " + std::to_string(n0) + " and support in [0, " +
                    std::to_string(window) + ")";
    report.evidence_columns = {"survivor"};

    std::size_t enumerated = 0;
    std::vector<FinVec> survivors;
    FinVec current;
    long budget = static_cast<long>(n0);
    std::function<void(std::size_t, long)> enumerate = [&](std::size_t i, long left) {
        if (i == window) {
            ++enumerated;
            if (in_Un(current, n0)) survivors.push_back(current);
            return;
        }
        enumerate(i + 1, left);  // coefficient 0
        for (long v = 1; v <= left; ++v) {
            for (int s : {+1, -1}) {
                current.add_term(i, s > 0 ? Int(v) : Int(-v));
                enumerate(i + 1, left - v);
                current.add_term(i, s > 0 ? Int(-v) : Int(v));
            }
        }
    };
    enumerate(0, budget);

    for (const FinVec& s : survivors) report.evidence.push_back({s.str()});
    report.params["enumerated"] = std::to_string(enumerated);
    report.params["survivors"] = std::to_string(survivors.size());
    bool only_zero = survivors.size() == 1 && survivors[0].is_zero();
    report.verdict = only_zero ? Verdict::certified : Verdict::refuted;
    return report;
}

std::vector<FinVec> compact_witness(std::size_t n0, const FiberFn& fiber, std::size_t count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    Int target = Int(static_cast<unsigned long>(n0)) + 1;
    if (!fiber.attains(target))
        throw std::invalid_argument("fiber audit failure: value " + target.get_str() +
                                    " is not attained");
    std::vector<FinVec> out;
    out.push_back(FinVec{});  // the cluster point 0
    for (std::size_t i = 0; out.size() < count + 1; ++i) {
        if (fiber(i) == target) out.push_back(FinVec::scaled_unit(i, target));
    }
    return out;
}

std::vector<FinVec> nondiscrete_witness(std::size_t n, const topo::CanonicalNbhd& nbhd,
                                        std::size_t count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    Int coeff = pow_int(2, static_cast<unsigned long>(n));
    std::vector<FinVec> out;
    for (std::size_t i = 0; out.size() < count; ++i) {
        FinVec v = FinVec::scaled_unit(i, coeff);
        if (topo::member_nbhd_free(v, nbhd)) out.push_back(std::move(v));
        // Such i always exist: 2^n units fit once i >= m_{2^n - 1}.
    }
    return out;
}

}  // namespace tseq::freeab
