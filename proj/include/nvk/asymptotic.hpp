#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "nvk/errors.hpp"

namespace nvk {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Asymptotically constant family of symmetric blocks B1(s), B2(s): piecewise
// linear between samples on [-T, T], constant beyond. The block operator on
// V + V is B(s) = [[B1, B2], [B2, B1]]; E = diag(-I, I).
class BlockOperatorFamily {
  public:
    BlockOperatorFamily(std::vector<double> s, std::vector<Mat> b1,
                        std::vector<Mat> b2, double plateauT);

    int dim() const { return n_; }           // dim V
    double plateau() const { return T_; }
    const std::vector<double>& grid() const { return s_; }

    Mat b1At(double s) const;
    Mat b2At(double s) const;
    Mat blockAt(double s) const;   // 2n x 2n
    static Mat blockOf(const Mat& b1, const Mat& b2);
    static Mat eMatrix(int n);

    // sup_s ||Bi(s)|| equals the max over sample nodes (operator norm is
    // convex along linear interpolation).
    double normB1() const;
    double normB2() const;
    double supNormSum() const { return normB1() + normB2(); }
    // ||B1^-|| + ||B2^-|| and the + side.
    double asymptoticNormSumMinus() const;
    double asymptoticNormSumPlus() const;
    double etaZero() const;  // max of the two asymptotic sums
    double etaOne() const { return supNormSum(); }

    static BlockOperatorFamily constant(const Mat& b1, const Mat& b2,
                                        double plateauT);

  private:
    int n_;
    double T_;
    std::vector<double> s_;
    std::vector<Mat> b1_, b2_;
};

struct SignatureCount {
    int positive;
    int negative;
    double minAbsEigenvalue;
};

// Eigenvalue signature of E + mu B; requires |mu| < 1/(||B1|| + ||B2||).
SignatureCount signatureCount(const Mat& b1, const Mat& b2, double mu);

struct SplitOperator {
    Mat matrix;  // E + mu B
    double mu;
    Mat projPlus, projMinus;
    int rankPlus, rankMinus;
    Mat basisPlus, basisMinus;  // orthonormal eigenvector columns
};

SplitOperator spectralProjections(const Mat& b1, const Mat& b2, double mu);

struct IntegratorResult {
    Mat phiT;              // fundamental solution at s = T, Phi(-T) = I
    double richardsonGap;  // relative disagreement of the step-halving audit
    int steps;
};

// Fixed-step RK4 for dPhi/ds + (eta E + B(s)) Phi = 0 with steps aligned to
// the sample grid; audited by step halving. Throws StepTooLarge when the
// audit exceeds `tolerance`.
IntegratorResult fundamentalSolution(const BlockOperatorFamily& fam,
                                     double eta, int steps = 4096,
                                     double tolerance = 1e-6);

struct PicardResult {
    Mat phiT;
    int terms;
    double remainderBound;  // e^{2T||A||} (2T||A||)^{k+1} / (k+1)!
};

// Truncated Picard/Dyson series on a refined grid with fourth-order
// cumulative quadrature; independent of the RK4 route.
PicardResult picardFundamentalSolution(const BlockOperatorFamily& fam,
                                       double eta, int terms = 30,
                                       int refinement = 64);

struct ScanPoint {
    double eta;
    double sigmaN;     // n-th singular value of the composed operator
    double threshold;  // scaled rank-deficiency threshold
    bool candidate;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    std::vector<double> candidates;  // refined dip locations
    double etaZero, etaOne;
};

// sigma_n of Pi^-_{B+}(1/eta) Phi_eta(T) Pi^-_{B-}(1/eta) restricted to the
// rank-n projection subspaces.
double compositionSigmaN(const BlockOperatorFamily& fam, double eta,
                         double* spectralNormOut = nullptr, int steps = 4096);

// Grid scan over [etaLo, etaHi] (must sit in (etaZero, inf)); dips below the
// scaled threshold are refined by golden-section minimization.
ScanResult exceptionalSetScan(const BlockOperatorFamily& fam, double etaLo,
                              double etaHi, int resolution,
                              double thresholdScale = 1e-6, int steps = 4096);

// Fourier block family of a Hessian path: B1 = H^{1,0}, B2 = H^{0,1} with
// respect to the standard complex structure J0 = [[0, -I], [I, 0]]; the
// spectral parameter for mode k at rescaling lambda is 2 pi k / lambda.
BlockOperatorFamily fourierBlockSystem(const std::vector<double>& s,
                                       const std::vector<Mat>& hessians,
                                       double plateauT);
double fourierEta(int k, double lambda);
Mat complexLinearPart(const Mat& h);      // (H - J H J)/2
Mat complexAntilinearPart(const Mat& h);  // (H + J H J)/2

}  // namespace nvk
