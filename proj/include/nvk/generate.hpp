#pragma once

#include "nvk/morse.hpp"
#include "nvk/quantum.hpp"
#include "nvk/random.hpp"
#include "nvk/tensor.hpp"
#include "nvk/transforms.hpp"

namespace nvk {

// One-step filtered map instance over Lambda^{Q, Z}: integer levels, term
// exponents bounded by `maxExp` in absolute value, filtration respected.
struct StepInstance {
    FilteredVectorSpace src, tgt;
    NovMatrix A;
};
StepInstance randomStepInstance(Rng& rng, int maxDimPerSide, long long maxExp);

// Random alternating critical values: m <= maxM, integer values in [lo, hi].
CircleMorseData randomCircleMorseData(Rng& rng, int maxM, long long lo,
                                      long long hi);
// m-periodic pattern repeated m times (same p, q per period).
CircleMorseData randomPeriodicMorseData(Rng& rng, int m, long long lo,
                                        long long hi);

// Square-zero signed complex built from a random pairing differential
// conjugated by a unipotent parity-preserving change of basis, then carried
// to random levels in the exponent group.
SignedComplex randomSignedComplex(Rng& rng, int maxDim, long long maxGapExp);

// Valid quantum correction: square-zero deformed differential over
// Lambda_{>=0} with zero levels; base = its T^0 part; gaps = tightest
// achievable (1 where undeformed).
QuantumCorrection randomQuantumCorrection(Rng& rng, int gradings,
                                          int maxDimPerGrading);

// Complex with margin >= 1 between nu(entries) and the level condition, so
// level jitter up to 1/2 per generator keeps it valid.
FilteredComplex randomSlackComplex(Rng& rng, int gradings, int maxDim);

// Shift-isomorphism data for C: grading rotation, constant sigma (halves),
// unipotent-times-units Phi with exact polynomial inverse.
ShiftIsomorphism randomShiftIso(Rng& rng, const FilteredComplex& C);

// Level jitter |eps_i| <= budget (quarters of it, exactly representable).
FilteredComplex jitterLevels(Rng& rng, const FilteredComplex& C,
                             const Rat& budget);

FilteredMap identityMap(const FilteredComplex& C, const FilteredComplex& D,
                        const Rat& shift);
FilteredMap zeroHomotopy(const FilteredComplex& C, const FilteredComplex& D,
                         const Rat& shift);

std::vector<Rat> randomSparseSequence(Rng& rng, int maxLen, long long lo,
                                      long long hi);

}  // namespace nvk
