#pragma once

#include "nvk/reduce.hpp"

namespace nvk {

// Reinterpret the complex over a supergroup; generators, levels and the
// differential are unchanged. Throws NotASupergroup.
FilteredComplex extendCoefficients(const FilteredComplex& C,
                                   const ExponentGroup& gPrime);

// Shift-isomorphism data: a grading bijection phi with phi(k+1) = phi(k)+1, a
// level shift sigma constant along successor orbits, and invertible matrices
// Phi_k : C_k -> D_{phi(k)}.
struct ShiftIsomorphism {
    std::vector<int> phi;         // grading index -> grading index
    std::vector<Rat> sigma;       // per source grading
    std::vector<NovMatrix> Phi;   // per source grading
};

// Builds D with pieces at phi(k) carrying levels ell + sigma(k) and the
// conjugated differential; verifies equivariance and that Phi is a filtration
// isomorphism on generators in both directions.
FilteredComplex applyShiftIsomorphism(const FilteredComplex& C,
                                      const ShiftIsomorphism& iso,
                                      const ReduceOptions& opts = {});

struct QuasiequivalenceReport {
    Rat c1, c2, c;
    Rat depthC, depthD;
    std::vector<Rat> depthCGraded, depthDGraded;
    bool bound() const;  // |depthC - depthD| <= c
};

// Verifies the c1-morphism, c2-morphism and the two c-homotopy identities,
// then computes and compares both boundary depths. Throws
// HomotopyIdentityFails / ShiftExceeded on invalid data.
QuasiequivalenceReport quasiequivalenceAudit(
    const FilteredMap& Phi, const FilteredMap& Psi, const FilteredMap& K1,
    const FilteredMap& K2, const Rat& c1, const Rat& c2, const Rat& c,
    const ReduceOptions& opts = {});

}  // namespace nvk
