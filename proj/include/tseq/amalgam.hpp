#pragma once

#include <utility>
#include <vector>

#include "tseq/intseq.hpp"
#include "tseq/numeric.hpp"
#include "tseq/report.hpp"

namespace tseq::amalgam {

/// Element of (Z + Z)/Gamma with Gamma = {(h, -h) : h in cZ}, kept in the
/// unique normal form (u, v) with 0 <= v < c. For c = 1 the second
/// coordinate is always 0.
struct AmalgamElt {
    Int c;
    Int u;
    Int v;

    bool operator==(const AmalgamElt& o) const = default;
    bool operator<(const AmalgamElt& o) const;
    std::string str() const;
};

/// Canonical representative of (x, y) + Gamma: shift by t = floor(y/c)
/// so the second coordinate lands in [0, c).
AmalgamElt normal_form(const Int& x, const Int& y, const Int& c);

AmalgamElt add(const AmalgamElt& a, const AmalgamElt& b);
AmalgamElt neg(const AmalgamElt& a);

/// The two coordinate embeddings and their common restriction to H = cZ.
AmalgamElt emb1(const Int& g, const Int& c);
AmalgamElt emb2(const Int& g, const Int& c);
AmalgamElt embH(const Int& h, const Int& c);  // requires c | h

/// Windowed check that emb1(G) intersect emb2(G) equals embH(H):
/// enumerates |g| <= bound on both sides and compares element sets.
WitnessReport intersection_check(const Int& c, const Int& bound);

struct PushedSequences {
    std::vector<AmalgamElt> e1;  // normal forms of emb1(a_n)
    std::vector<AmalgamElt> e2;  // normal forms of emb2(a_n)
    std::size_t first;
};

/// Normal forms of emb1(a_n) and emb2(a_n) for n <= N.
PushedSequences pushed_sequences(const IntSeq& a, const Int& c, std::size_t N);

}  // namespace tseq::amalgam
