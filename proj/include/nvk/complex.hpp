#pragma once

#include <map>
#include <string>
#include <vector>

#include "nvk/filtered_space.hpp"

namespace nvk {

// Finite grading set with a Z-action given by a successor bijection. Z/N
// gradings are successor cycles of length N; a one-element cycle gives the
// ungraded mode.
struct GradingSet {
    std::vector<std::string> labels;
    std::vector<int> succ;

    int size() const { return static_cast<int>(labels.size()); }
    int indexOf(const std::string& label) const;
    int pred(int k) const;
    void validate() const;
    static GradingSet cycle(const std::vector<std::string>& labels);
    static GradingSet single(const std::string& label = "k0");
};

// S-graded R-filtered complex: one filtered vector space per grading label
// and, for each label k, the differential block arriving into k from the
// successor grading. diff[k] : piece[succ[k]] -> piece[k].
struct FilteredComplex {
    GradingSet grading;
    std::vector<FilteredVectorSpace> pieces;
    std::vector<NovMatrix> diff;
    ExponentGroup group;

    const FilteredVectorSpace& piece(int k) const { return pieces[k]; }
    const NovMatrix& diffInto(int k) const { return diff[k]; }

    // Checks group consistency, the level condition ell(dx) <= ell(x) on
    // every generator, and dated twice = 0 (exactly, below cutoffs).
    void validate() const;

    int totalDim() const;
    bool generatorNamesUnique() const;
};

// Map of filtered complexes with a uniform level shift c. degree 0 maps
// grading k to k, degree +1 (homotopies) maps k to succ(k).
struct FilteredMap {
    const FilteredComplex* source = nullptr;
    const FilteredComplex* target = nullptr;
    std::vector<NovMatrix> blocks;  // indexed by source grading
    Rat shift;
    int degree = 0;

    // Verifies block shapes, the chain-map identity (degree 0 only) and the
    // level condition ell(Phi x) <= ell(x) + shift on generators.
    void validate(bool requireChainMap = true) const;
};

FilteredComplex makeTwoTermComplex(const FilteredVectorSpace& top,
                                   const FilteredVectorSpace& bottom,
                                   const NovMatrix& d);

}  // namespace nvk
