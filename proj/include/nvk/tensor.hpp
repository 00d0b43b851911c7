#pragma once

#include "nvk/reduce.hpp"

namespace nvk {

// Ungraded filtered complex with a Z_2 grading supplying the tensor sign
// rule. Parity classes are spanned by disjoint subsets of the distinguished
// basis and the differential flips parity. The characteristic-two route of
// the sign rule is not available over rational coefficients; constructing a
// SignedComplex in that mode is rejected.
struct SignedComplex {
    FilteredComplex complex;  // single grading label
    std::vector<int> parity;  // 0/1 per generator

    const FilteredVectorSpace& space() const { return complex.pieces[0]; }
    const NovMatrix& differential() const { return complex.diff[0]; }
    void validate() const;

    static SignedComplex make(FilteredVectorSpace space, NovMatrix d,
                              std::vector<int> parity);
};

// Product space with basis {x_i (x) y_j} (C-major ordering) and levels
// ell_C(x_i) + ell_D(y_j).
FilteredVectorSpace tensorLevels(const FilteredVectorSpace& C,
                                 const FilteredVectorSpace& D);

// Full product complex with the signed differential
// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
SignedComplex tensorComplex(const SignedComplex& C, const SignedComplex& D);

struct BasisIndependenceReport {
    int probes = 0;
    bool allEqual = true;
};

// Lemma-style basis independence of the product level: evaluates the product
// level of random probe chains through the distinguished bases and through
// the supplied alternative orthogonal bases; exact equality required.
// altC/altD empty means "keep the distinguished basis on that side".
BasisIndependenceReport checkBasisIndependence(
    const FilteredVectorSpace& C, const FilteredVectorSpace& D,
    const std::vector<Chain>& altC, const std::vector<Chain>& altD,
    int probes, unsigned long long seed);

struct ProductBoundReport {
    Rat depthC, depthD, depthProduct;
    int dimHC, dimHD;
    bool boundA;   // b(CxD) >= min(b(C), b(D))
    bool boundB1;  // H(D) != 0  =>  b(CxD) >= b(C)
    bool boundB2;  // H(C) != 0  =>  b(CxD) >= b(D)
    bool allHold() const { return boundA && boundB1 && boundB2; }
};

// Computes all depths and homology dimensions and evaluates the product
// bounds; a violation is reported as a fatal invariant failure by callers.
ProductBoundReport verifyProductBounds(const SignedComplex& C,
                                       const SignedComplex& D,
                                       const ReduceOptions& opts = {});

}  // namespace nvk
