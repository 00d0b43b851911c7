#pragma once

#include "nvk/reduce.hpp"

namespace nvk {

// Cyclically ordered critical values (p1, q1, ..., pm, qm), maxima and minima
// alternating, normalized so that p1 is a global maximum (rotation at
// construction; ties broken by first occurrence).
struct CircleMorseData {
    std::vector<Rat> maxima;  // p_i
    std::vector<Rat> minima;  // q_i

    int m() const { return static_cast<int>(maxima.size()); }
    Rat osc() const;
    void validate() const;

    // From the interleaved cyclic list (p1, q1, p2, q2, ...).
    static CircleMorseData fromAlternating(const std::vector<Rat>& values);
};

// Equally spaced exact samples of a function on R/Z.
struct SampledCircleFunction {
    std::vector<Rat> samples;  // N >= 4
    void validate() const;
};

// Sampled compactly supported profile on (0,1): first and last samples are
// zero, max value 1, and every (non-strict) local minimum has value 0.
struct BumpProfile {
    std::vector<Rat> samples;  // on the uniform grid over [0,1]
    void validate() const;
    static BumpProfile defaultProfile();  // 0, 1/2, 1, 1/2, 0
};

// Morse complex on the circle: gradings 1 and 0 over the trivial group,
// d p_i = q_i - q_{i-1} (indices mod m).
FilteredComplex morseComplex(const CircleMorseData& d);

// gamma(f): max over cyclically ordered critical quadruples (p_i, q_k, p_j,
// q_l) of min(p_i, p_j) - max(q_k, q_l); zero when m = 1. Both the O(m^2)
// arc-minimum refinement and the O(m^4) enumeration are available; the
// default cross-checks them.
Rat betaCombinatorial(const CircleMorseData& d);
Rat betaCombinatorialQuartic(const CircleMorseData& d);

// Boundary depth of the Morse complex through the chain engine.
Rat betaChain(const CircleMorseData& d, const ReduceOptions& opts = {});

struct QuadrupleWitness {
    int i, k, j, l;  // 1-based indices of (p_i, q_k, p_j, q_l); m >= 2 only
    Rat value;
};
QuadrupleWitness betaQuadruple(const CircleMorseData& d);

// Extracts the alternating extremal sequence of a cyclic sample list
// (plateaus collapse; non-strict extrema) and evaluates the quadruple
// formula, clamped below at zero.
Rat betaContinuous(const SampledCircleFunction& f);
CircleMorseData extractAlternatingExtrema(const SampledCircleFunction& f);

// Sampled function on the real line, zero off the sampled window.
struct SampledLineFunction {
    std::vector<Rat> positions;  // strictly increasing
    std::vector<Rat> values;
    void validate() const;
};

// mm f: infimum of f over its non-strict local maxima. The circle variant
// uses cyclic neighbors; the line variant treats the function as zero
// outside the window (so mm f <= 0 always).
Rat mmCircle(const SampledCircleFunction& f);
Rat mmLine(const SampledLineFunction& f);
Rat minValue(const SampledLineFunction& f);
Rat oscValue(const SampledLineFunction& f);

// f_v(s) = sum_i v_i g(2^i (s - (1 - 2^{1-i}))): block i is the affine
// rescale of the profile onto [1 - 2^{1-i}, 1 - 2^{-i}], scaled by v_i.
// Sampled on the union of the mapped profile grids over blocks 1..blockCount
// (so shared grids across different v are literally equal).
SampledLineFunction stackedBumps(const std::vector<Rat>& v,
                                 const BumpProfile& g, int blockCount);

struct EmbeddingReport {
    Rat supNorm;      // ||v - w||_inf (zero-padded sequences)
    Rat oscSeq;       // osc(v - w) over the sequence including 0
    Rat negMinFv;     // -min f_{v-w}
    Rat negMinFw;     // -min f_{w-v}
    Rat mmF;          // mm f_{v-w}
    bool supNormMatches;  // max(negMinFv, negMinFw) == supNorm
    bool oscMatches;      // osc f_{v-w} == oscSeq
};

EmbeddingReport embeddingBounds(const std::vector<Rat>& v,
                                const std::vector<Rat>& w,
                                const BumpProfile& g);

}  // namespace nvk
