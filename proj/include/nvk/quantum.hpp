#pragma once

#include "nvk/reduce.hpp"

namespace nvk {

// Deformation of a rational-coefficient complex by terms of positive
// valuation. `deformed` carries the full differential with all levels zero;
// the base differential is the T^0 part, recorded separately as exact
// rational matrices in the same block layout as FilteredComplex::diff.
struct QuantumCorrection {
    FilteredComplex deformed;
    std::vector<std::vector<Rat>> base;  // base[k]: row-major rational block
    std::vector<Rat> gap;                // declared mu per grading, > 0

    const Rat& baseAt(int k, int i, int j) const {
        return base[k][size_t(i) * deformed.pieces[C(k)].dim() + j];
    }
    int C(int k) const { return deformed.grading.succ[k]; }

    // Structural checks: levels all zero, base blocks square with the
    // deformed blocks, mu(k) in Gamma and positive, base differential squares
    // to zero.
    void validate() const;
};

struct GapEntryReport {
    int grading;
    std::string target, source;
    Rat required;
    Extended actual;
    bool ok;
};

struct GapReport {
    std::vector<GapEntryReport> violations;
    std::vector<Extended> tightest;  // per grading; +inf when undeformed
    bool valid() const { return violations.empty(); }
};

// Entrywise check that nu(deformation) >= mu(k); reports the tightest
// achievable gap per grading.
GapReport validateGap(const QuantumCorrection& q);
// Throwing variant used by loaders.
void requireValidGap(const QuantumCorrection& q);

struct Alternative {
    bool first;  // true: alternative (i); false: alternative (ii)
    Rat depthK, depthKm1;
    int dimHLambda, dimHBase;
    Rat muK, muKm1;
};

// The dichotomy at grading k, decided exactly: (i) b_k = b_{k-1} = 0 and
// dim H_k(C) = dim H_k(base); (ii) b_k >= mu(k) or b_{k-1} >= mu(k-1), and
// dim H_k(C) < dim H_k(base). Throws InvariantViolation if neither (or both)
// alternative holds.
Alternative classify(const QuantumCorrection& q, int k,
                     const ReduceOptions& opts = {});

// (rank of the base block into k, rank of the deformed block into k).
std::pair<int, int> rankCompare(const QuantumCorrection& q, int k,
                                const ReduceOptions& opts = {});

// Exact rank of a rational matrix (plain Gaussian elimination).
int rationalRank(std::vector<std::vector<Rat>> m);

// Rank of the base block into grading k, as a rational matrix.
int baseRank(const QuantumCorrection& q, int k);
// dim_Q H_k of the base complex.
int baseHomologyDim(const QuantumCorrection& q, int k);

}  // namespace nvk
