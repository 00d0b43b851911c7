#pragma once

// Test-only oracles, independent of the reduction engine:
//  - minorInvariants: Smith-invariant gap multiset via minor valuations of
//    the standardized matrix (exact polynomial determinants);
//  - digitPrimitiveExists: exact rational linear algebra over exponent
//    digits deciding whether a boundary has a primitive at or below a given
//    level (the containment in the definition of boundary depth);
//  - enumeratePrimitiveInf: small-coefficient enumeration of primitives of
//    one fixed boundary (upper bound on the inf; exact when paired with a
//    digitPrimitiveExists refutation one grid step lower).

#include <optional>

#include "nvk/complex.hpp"

namespace nvk::oracle {

struct MinorResult {
    int rank;
    std::vector<Rat> gaps;  // ascending, size == rank
    Rat depth() const { return gaps.empty() ? Rat(0) : gaps.back(); }
};
MinorResult minorInvariants(const NovMatrix& A, const FilteredVectorSpace& src,
                            const FilteredVectorSpace& tgt);

// Decides whether there is y with ell(y) <= level and A y = x0 below the
// truncation bound `window` (exponent threshold for the matching equation;
// digits of y range over [ell_j - level, window + spread]). Truncation only
// relaxes the equation, so `false` certifies that no such primitive exists.
bool digitPrimitiveExists(const NovMatrix& A, const FilteredVectorSpace& src,
                          const FilteredVectorSpace& tgt, const Chain& x0,
                          const Rat& level, const Rat& window);

// Cheapest primitive of x0 with coordinates c*T^t, c in {-maxCoeff..maxCoeff},
// t in {0..expRange} * generator; +inf when none found.
Extended enumeratePrimitiveInf(const NovMatrix& A,
                               const FilteredVectorSpace& src,
                               const FilteredVectorSpace& tgt, const Chain& x0,
                               int maxCoeff, int expRange);

// Full eq-(8.2) certification of one grading step against the engine output:
// gap multiset from minors, witness optimality from digits. Throws on any
// disagreement.
void certifyStep(const NovMatrix& A, const FilteredVectorSpace& src,
                 const FilteredVectorSpace& tgt);

}  // namespace nvk::oracle
