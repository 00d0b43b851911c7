#pragma once

#include <string>
#include <vector>

#include "nvk/novikov.hpp"

namespace nvk {

// Chain = coordinate vector with respect to a space's distinguished basis.
using Chain = std::vector<NovikovElement>;

// Finite-dimensional filtered vector space over the Novikov field: named
// generators with finite rational levels. The level of an arbitrary chain is
// computed termwise on the distinguished (orthogonal) basis.
struct FilteredVectorSpace {
    std::vector<std::string> names;
    std::vector<Rat> levels;
    ExponentGroup group;

    int dim() const { return static_cast<int>(names.size()); }
    int indexOf(const std::string& name) const;
    FilteredVectorSpace overGroup(const ExponentGroup& g) const;
};

// ell(sum lambda_i x_i) = max_i (ell(x_i) - nu(lambda_i)); -inf on zero.
// Throws CutoffAmbiguous when a truncated coordinate could dominate.
Extended chainLevel(const Chain& c, const FilteredVectorSpace& V);

Chain zeroChain(const FilteredVectorSpace& V);
Chain basisChain(const FilteredVectorSpace& V, int i);
bool chainIsZero(const Chain& c);
Chain addChains(const Chain& a, const Chain& b);
Chain scaleChain(const Chain& c, const NovikovElement& s);
std::string chainStr(const Chain& c, const FilteredVectorSpace& V);

// Dense matrix of Novikov elements; entry(i, j) maps source j to target i.
class NovMatrix {
  public:
    NovMatrix() : rows_(0), cols_(0) {}
    NovMatrix(int rows, int cols, const ExponentGroup& g);
    static NovMatrix identity(int n, const ExponentGroup& g);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const ExponentGroup& group() const { return group_; }

    NovikovElement& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const NovikovElement& at(int i, int j) const {
        return a_[size_t(i) * cols_ + j];
    }

    Chain apply(const Chain& v) const;
    NovMatrix times(const NovMatrix& o) const;
    Chain column(int j) const;
    void setColumn(int j, const Chain& c);
    NovMatrix overGroup(const ExponentGroup& g) const;
    bool allEntriesZeroBelowCutoff() const;
    bool isZeroMatrix() const;  // every entry exactly zero

  private:
    int rows_, cols_;
    ExponentGroup group_;
    std::vector<NovikovElement> a_;
};

// Orthogonality test for a family of chains (Lemma-style criterion: after
// standardizing and normalizing to level zero, the T^0 reduction vectors must
// be linearly independent over Q). Returns through flags; helpers throw.
struct OrthogonalityReport {
    bool independentOverField = false;
    bool orthogonal = false;
    // When not orthogonal (but independent), a witness combination whose
    // level drops below the max of its parts.
    std::vector<Rat> dropWitness;
};
OrthogonalityReport checkOrthogonality(const std::vector<Chain>& chains,
                                       const FilteredVectorSpace& V);

// Extends an orthogonal family to an orthogonal basis of V by greedily
// adjoining distinguished basis vectors. Throws NotIndependent /
// NotOrthogonal on bad input.
std::vector<Chain> extendOrthogonalBasis(const std::vector<Chain>& family,
                                         const FilteredVectorSpace& V);

}  // namespace nvk
