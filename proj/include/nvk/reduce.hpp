#pragma once

#include <optional>

#include "nvk/complex.hpp"

namespace nvk {

struct ReduceOptions {
    std::optional<Rat> cutoffOverride;
    // Re-run the elimination with the working cutoff doubled and require
    // identical gaps and witness valuations.
    bool verifyDoubling = true;
};

struct ReductionPair {
    Chain primitive;  // y, source coordinates
    Chain boundary;   // x = A y, target coordinates
    Rat gap;          // ell(y) - ell(x)
};

// Orthogonal bases adapted to one grading step of the differential. The
// paired chains and the unpaired completions together form orthogonal bases
// of the source and target; chains live over `certGroup` (the internal
// coefficient extension making both spaces standard).
struct ReductionCertificate {
    std::vector<ReductionPair> pairs;  // gaps sorted descending
    std::vector<Chain> unpairedSource;  // orthogonal completion of ker A
    std::vector<Chain> unpairedTarget;  // orthogonal completion of coker A
    ExponentGroup certGroup;
    Rat workingCutoff;
    int rank() const { return static_cast<int>(pairs.size()); }
    Rat largestGap() const { return pairs.empty() ? Rat(0) : pairs.front().gap; }
};

struct DepthWitness {
    Chain boundary;   // x0, target coordinates, original coefficients
    Chain primitive;  // y0, source coordinates, original coefficients
    Rat gap;
};

// Reduction of a single filtered map A : (src, ell) -> (tgt, ell) following
// the orthonormal-elimination construction; minimal-valuation pivots, ties
// by smallest source then target index.
ReductionCertificate reduce(const NovMatrix& A, const FilteredVectorSpace& src,
                            const FilteredVectorSpace& tgt,
                            const ReduceOptions& opts = {});

// Witness pair realizing the boundary depth of one grading step, projected
// back to the original coefficient field. Throws ZeroMap when A = 0.
DepthWitness depthWitness(const NovMatrix& A, const FilteredVectorSpace& src,
                          const FilteredVectorSpace& tgt,
                          const ReduceOptions& opts = {});

// Largest reduction gap of the (k+1) -> k block; 0 when the block has no
// pairs. b(C) is the max over gradings.
Rat boundaryDepthGraded(const FilteredComplex& C, int k,
                        const ReduceOptions& opts = {});
Rat boundaryDepth(const FilteredComplex& C, const ReduceOptions& opts = {});

// Ranks of all differential blocks (index k = block into grading k).
std::vector<int> differentialRanks(const FilteredComplex& C,
                                   const ReduceOptions& opts = {});
// dim_Lambda H_k(C) = dim C_k - rank(into k) - rank(out of k).
int homologyDim(const FilteredComplex& C, int k,
                const ReduceOptions& opts = {});

// Spec cutoff policy: (max level - min level) + sum of |e| over the set of
// distinct exponents in the entries, + 1.
Rat workingCutoffPolicy(const NovMatrix& A, const FilteredVectorSpace& src,
                        const FilteredVectorSpace& tgt);

// Solve A c = v over the field (least-valuation elimination); nullopt when
// inconsistent. Cutoff per the policy unless overridden.
std::optional<Chain> solveLinear(const NovMatrix& A, const Chain& v,
                                 const std::optional<Rat>& cutoff = {});

// Inverse of a square matrix; throws NotFiltrationIso-free Error when
// singular (callers wrap with their own error types).
NovMatrix invertMatrix(const NovMatrix& A,
                       const std::optional<Rat>& cutoff = {});

}  // namespace nvk
