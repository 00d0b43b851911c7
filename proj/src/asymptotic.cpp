#include "nvk/asymptotic.hpp"

#include <algorithm>
#include <cmath>

namespace nvk {

namespace {

void requireSymmetric(const Mat& m, const char* what) {
    if (m.rows() != m.cols()) throw NotSymmetric(std::string(what) + ": not square");
    double scale = std::max(1.0, m.norm());
    if ((m - m.transpose()).norm() > 1e-12 * scale)
        throw NotSymmetric(std::string(what) + ": matrix is not symmetric");
}

double spectralNorm(const Mat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

double symmetricNorm(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    double lo = std::abs(es.eigenvalues()(0));
    double hi = std::abs(es.eigenvalues()(es.eigenvalues().size() - 1));
    return std::max(lo, hi);
}

}  // namespace

BlockOperatorFamily::BlockOperatorFamily(std::vector<double> s,
                                         std::vector<Mat> b1,
                                         std::vector<Mat> b2, double plateauT)
    : T_(plateauT), s_(std::move(s)), b1_(std::move(b1)), b2_(std::move(b2)) {
    if (s_.empty() || s_.size() != b1_.size() || s_.size() != b2_.size())
        throw InvariantViolation("BlockOperatorFamily: sample count mismatch");
    if (T_ <= 0) throw InvariantViolation("BlockOperatorFamily: T must be positive");
    for (size_t i = 1; i < s_.size(); ++i)
        if (!(s_[i - 1] < s_[i]))
            throw InvariantViolation(
                "BlockOperatorFamily: sample positions must increase");
    if (s_.front() != -T_ || s_.back() != T_)
        throw InvariantViolation(
            "BlockOperatorFamily: samples must span exactly [-T, T]");
    n_ = static_cast<int>(b1_.front().rows());
    for (size_t i = 0; i < s_.size(); ++i) {
        requireSymmetric(b1_[i], "BlockOperatorFamily B1");
        requireSymmetric(b2_[i], "BlockOperatorFamily B2");
        if (b1_[i].rows() != n_ || b2_[i].rows() != n_)
            throw InvariantViolation(
                "BlockOperatorFamily: inconsistent block dimensions");
        b1_[i] = ((b1_[i] + b1_[i].transpose()) / 2).eval();
        b2_[i] = ((b2_[i] + b2_[i].transpose()) / 2).eval();
    }
}

BlockOperatorFamily BlockOperatorFamily::constant(const Mat& b1, const Mat& b2,
                                                  double plateauT) {
    return BlockOperatorFamily({-plateauT, plateauT}, {b1, b1}, {b2, b2},
                               plateauT);
}

namespace {
Mat interpolate(const std::vector<double>& s, const std::vector<Mat>& v,
                double x) {
    if (x <= s.front()) return v.front();
    if (x >= s.back()) return v.back();
    size_t hi = 1;
    while (s[hi] < x) ++hi;
    double t = (x - s[hi - 1]) / (s[hi] - s[hi - 1]);
    return (1 - t) * v[hi - 1] + t * v[hi];
}
}  // namespace

Mat BlockOperatorFamily::b1At(double s) const { return interpolate(s_, b1_, s); }
Mat BlockOperatorFamily::b2At(double s) const { return interpolate(s_, b2_, s); }

Mat BlockOperatorFamily::blockOf(const Mat& b1, const Mat& b2) {
    const int n = static_cast<int>(b1.rows());
    Mat b(2 * n, 2 * n);
    b.topLeftCorner(n, n) = b1;
    b.topRightCorner(n, n) = b2;
    b.bottomLeftCorner(n, n) = b2;
    b.bottomRightCorner(n, n) = b1;
    return b;
}

Mat BlockOperatorFamily::blockAt(double s) const {
    return blockOf(b1At(s), b2At(s));
}

Mat BlockOperatorFamily::eMatrix(int n) {
    Mat e = Mat::Zero(2 * n, 2 * n);
    e.topLeftCorner(n, n) = -Mat::Identity(n, n);
    e.bottomRightCorner(n, n) = Mat::Identity(n, n);
    return e;
}

double BlockOperatorFamily::normB1() const {
    double m = 0;
    for (const auto& b : b1_) m = std::max(m, symmetricNorm(b));
    return m;
}

double BlockOperatorFamily::normB2() const {
    double m = 0;
    for (const auto& b : b2_) m = std::max(m, symmetricNorm(b));
    return m;
}

double BlockOperatorFamily::asymptoticNormSumMinus() const {
    return symmetricNorm(b1_.front()) + symmetricNorm(b2_.front());
}

double BlockOperatorFamily::asymptoticNormSumPlus() const {
    return symmetricNorm(b1_.back()) + symmetricNorm(b2_.back());
}

double BlockOperatorFamily::etaZero() const {
    return std::max(asymptoticNormSumMinus(), asymptoticNormSumPlus());
}

SignatureCount signatureCount(const Mat& b1, const Mat& b2, double mu) {
    requireSymmetric(b1, "signatureCount B1");
    requireSymmetric(b2, "signatureCount B2");
    double bound = symmetricNorm(b1) + symmetricNorm(b2);
    if (bound > 0 && std::abs(mu) >= 1.0 / bound)
        throw OutOfRange("signatureCount: |mu| must be < 1/(||B1||+||B2||)");
    const int n = static_cast<int>(b1.rows());
    Mat op = BlockOperatorFamily::eMatrix(n) +
             mu * BlockOperatorFamily::blockOf(b1, b2);
    Eigen::SelfAdjointEigenSolver<Mat> es(op, Eigen::EigenvaluesOnly);
    SignatureCount out{0, 0, 0.0};
    out.minAbsEigenvalue = std::abs(es.eigenvalues()(0));
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        out.minAbsEigenvalue = std::min(out.minAbsEigenvalue, std::abs(l));
        if (l > 0) ++out.positive;
        if (l < 0) ++out.negative;
    }
    return out;
}

SplitOperator spectralProjections(const Mat& b1, const Mat& b2, double mu) {
    requireSymmetric(b1, "spectralProjections B1");
    requireSymmetric(b2, "spectralProjections B2");
    double bound = symmetricNorm(b1) + symmetricNorm(b2);
    if (bound > 0 && std::abs(mu) >= 1.0 / bound)
        throw OutOfRange(
            "spectralProjections: |mu| must be < 1/(||B1||+||B2||)");
    const int n = static_cast<int>(b1.rows());
    SplitOperator s;
    s.mu = mu;
    s.matrix = BlockOperatorFamily::eMatrix(n) +
               mu * BlockOperatorFamily::blockOf(b1, b2);
    Eigen::SelfAdjointEigenSolver<Mat> es(s.matrix);
    const int dim = 2 * n;
    s.projPlus = Mat::Zero(dim, dim);
    s.projMinus = Mat::Zero(dim, dim);
    s.rankPlus = 0;
    s.rankMinus = 0;
    std::vector<int> plus, minus;
    for (int i = 0; i < dim; ++i)
        (es.eigenvalues()(i) > 0 ? plus : minus).push_back(i);
    s.basisPlus = Mat(dim, static_cast<int>(plus.size()));
    s.basisMinus = Mat(dim, static_cast<int>(minus.size()));
    for (size_t i = 0; i < plus.size(); ++i)
        s.basisPlus.col(static_cast<int>(i)) = es.eigenvectors().col(plus[i]);
    for (size_t i = 0; i < minus.size(); ++i)
        s.basisMinus.col(static_cast<int>(i)) = es.eigenvectors().col(minus[i]);
    s.projPlus = s.basisPlus * s.basisPlus.transpose();
    s.projMinus = s.basisMinus * s.basisMinus.transpose();
    s.rankPlus = static_cast<int>(plus.size());
    s.rankMinus = static_cast<int>(minus.size());
    return s;
}

namespace {

Mat rk4Run(const BlockOperatorFamily& fam, double eta, int steps) {
    const int n = fam.dim();
    const Mat E = BlockOperatorFamily::eMatrix(n);
    auto deriv = [&](double s, const Mat& phi) -> Mat {
        return -((eta * E + fam.blockAt(s)) * phi);
    };
    // Steps aligned with sample nodes so every RK4 step sees a smooth B.
    const auto& grid = fam.grid();
    const double total = grid.back() - grid.front();
    Mat phi = Mat::Identity(2 * n, 2 * n);
    for (size_t seg = 1; seg < grid.size(); ++seg) {
        double a = grid[seg - 1], b = grid[seg];
        int sub = std::max(1, static_cast<int>(
                                  std::llround(steps * (b - a) / total)));
        double h = (b - a) / sub;
        for (int i = 0; i < sub; ++i) {
            double s = a + i * h;
            Mat k1 = deriv(s, phi);
            Mat k2 = deriv(s + h / 2, phi + (h / 2) * k1);
            Mat k3 = deriv(s + h / 2, phi + (h / 2) * k2);
            Mat k4 = deriv(s + h, phi + h * k3);
            phi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    return phi;
}

}  // namespace

IntegratorResult fundamentalSolution(const BlockOperatorFamily& fam,
                                     double eta, int steps, double tolerance) {
    if (eta <= 0) throw OutOfRange("fundamentalSolution: eta must be positive");
    Mat coarse = rk4Run(fam, eta, steps);
    Mat fine = rk4Run(fam, eta, 2 * steps);
    double gap = (coarse - fine).norm() / std::max(1.0, fine.norm());
    if (gap > tolerance)
        throw StepTooLarge(
            "fundamentalSolution: Richardson audit disagreement " +
            std::to_string(gap) + " exceeds tolerance");
    IntegratorResult r;
    r.phiT = fine;
    r.richardsonGap = gap;
    r.steps = steps;
    return r;
}

PicardResult picardFundamentalSolution(const BlockOperatorFamily& fam,
                                       double eta, int terms, int refinement) {
    if (eta <= 0) throw OutOfRange("picard: eta must be positive");
    const int n = fam.dim();
    const Mat E = BlockOperatorFamily::eMatrix(n);

    // Quadrature mesh: every sample interval split into an even number of
    // cells so composite Simpson pairs never straddle an interpolation
    // corner.
    std::vector<double> mesh;
    const auto& grid = fam.grid();
    for (size_t seg = 1; seg < grid.size(); ++seg) {
        int cells = 2 * std::max(1, refinement);
        for (int c = 0; c < cells; ++c)
            mesh.push_back(grid[seg - 1] +
                           (grid[seg] - grid[seg - 1]) * c / cells);
    }
    mesh.push_back(grid.back());
    const int M = static_cast<int>(mesh.size());

    std::vector<Mat> A(M);
    double normA = 0;
    for (int i = 0; i < M; ++i) {
        A[i] = eta * E + fam.blockAt(mesh[i]);
        normA = std::max(normA, spectralNorm(A[i]));
    }

    const int dim = 2 * n;
    std::vector<Mat> term(M, Mat::Identity(dim, dim));
    std::vector<Mat> sum(M, Mat::Identity(dim, dim));
    std::vector<Mat> F(M), next(M);

    for (int k = 1; k <= terms; ++k) {
        for (int i = 0; i < M; ++i) F[i] = A[i] * term[i];
        // cumulative integral of F with fourth-order rules per smooth piece
        next[0] = Mat::Zero(dim, dim);
        int base = 0;
        for (size_t seg = 1; seg < grid.size(); ++seg) {
            int cells = 2 * std::max(1, refinement);
            double h = (grid[seg] - grid[seg - 1]) / cells;
            for (int c = 0; c < cells; ++c) {
                int j = base + c;  // node index of cell start
                if (c % 2 == 0) {
                    // left half of a Simpson pair: quadratic through
                    // (j, j+1, j+2) integrated over [j, j+1]
                    next[j + 1] = next[j] +
                                  (h / 12) * (5 * F[j] + 8 * F[j + 1] -
                                              F[j + 2]);
                } else {
                    // right half: complete the pair
                    next[j + 1] = next[j - 1] +
                                  (h / 3) * (F[j - 1] + 4 * F[j] + F[j + 1]);
                }
            }
            base += cells;
        }
        for (int i = 0; i < M; ++i) {
            term[i] = -next[i];
            sum[i] += term[i];
        }
    }

    PicardResult r;
    r.phiT = sum[M - 1];
    r.terms = terms;
    double x = 2 * fam.plateau() * normA;
    double logRem = x - std::lgamma(terms + 2) + (terms + 1) * std::log(x);
    r.remainderBound = std::exp(logRem);
    return r;
}

double compositionSigmaN(const BlockOperatorFamily& fam, double eta,
                         double* spectralNormOut, int steps) {
    const double mu = 1.0 / eta;
    SplitOperator left = spectralProjections(fam.b1At(fam.plateau()),
                                             fam.b2At(fam.plateau()), mu);
    SplitOperator right = spectralProjections(fam.b1At(-fam.plateau()),
                                              fam.b2At(-fam.plateau()), mu);
    Mat phi = rk4Run(fam, eta, steps);
    if (spectralNormOut) *spectralNormOut = spectralNorm(phi);
    Mat composed =
        left.basisMinus.transpose() * phi * right.basisMinus;  // n x n
    Eigen::JacobiSVD<Mat> svd(composed);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

ScanResult exceptionalSetScan(const BlockOperatorFamily& fam, double etaLo,
                              double etaHi, int resolution,
                              double thresholdScale, int steps) {
    if (resolution < 2) throw UsageError("exceptionalSetScan: resolution >= 2");
    ScanResult out;
    out.etaZero = fam.etaZero();
    out.etaOne = fam.etaOne();
    if (!(etaLo > out.etaZero))
        throw OutOfRange(
            "exceptionalSetScan: range must lie strictly above eta0 = " +
            std::to_string(out.etaZero));
    if (!(etaLo < etaHi)) throw UsageError("exceptionalSetScan: empty range");

    auto sigma = [&](double eta, double* tau) {
        double nrm = 0;
        double s = compositionSigmaN(fam, eta, &nrm, steps);
        if (tau) *tau = thresholdScale * std::max(nrm, 1e-300);
        return s;
    };

    for (int i = 0; i < resolution; ++i) {
        double eta = etaLo + (etaHi - etaLo) * i / (resolution - 1);
        ScanPoint p;
        p.eta = eta;
        p.sigmaN = sigma(eta, &p.threshold);
        p.candidate = p.sigmaN < p.threshold;
        out.points.push_back(p);
    }

    // Refine each maximal run of below-threshold points by golden-section
    // minimization; report the refined dip location once per run.
    const double gold = (std::sqrt(5.0) - 1) / 2;
    size_t i = 0;
    while (i < out.points.size()) {
        if (!out.points[i].candidate) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < out.points.size() && out.points[j + 1].candidate) ++j;
        double lo = out.points[i > 0 ? i - 1 : i].eta;
        double hi = out.points[j + 1 < out.points.size() ? j + 1 : j].eta;
        double a = lo, b = hi;
        double x1 = b - gold * (b - a), x2 = a + gold * (b - a);
        double f1 = sigma(x1, nullptr), f2 = sigma(x2, nullptr);
        for (int it = 0; it < 40 && (b - a) > 1e-10 * (etaHi - etaLo); ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gold * (b - a);
                f1 = sigma(x1, nullptr);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gold * (b - a);
                f2 = sigma(x2, nullptr);
            }
        }
        double best = (a + b) / 2;
        double tau = 0;
        double val = sigma(best, &tau);
        if (val < tau) out.candidates.push_back(best);
        i = j + 1;
    }
    return out;
}

Mat complexLinearPart(const Mat& h) {
    const int d = static_cast<int>(h.rows());
    if (d % 2 != 0) throw NotSymmetric("complexLinearPart: odd dimension");
    const int r = d / 2;
    Mat J = Mat::Zero(d, d);
    J.topRightCorner(r, r) = -Mat::Identity(r, r);
    J.bottomLeftCorner(r, r) = Mat::Identity(r, r);
    return ((h - J * h * J) / 2).eval();
}

Mat complexAntilinearPart(const Mat& h) {
    const int d = static_cast<int>(h.rows());
    if (d % 2 != 0) throw NotSymmetric("complexAntilinearPart: odd dimension");
    const int r = d / 2;
    Mat J = Mat::Zero(d, d);
    J.topRightCorner(r, r) = -Mat::Identity(r, r);
    J.bottomLeftCorner(r, r) = Mat::Identity(r, r);
    return ((h + J * h * J) / 2).eval();
}

BlockOperatorFamily fourierBlockSystem(const std::vector<double>& s,
                                       const std::vector<Mat>& hessians,
                                       double plateauT) {
    if (s.size() != hessians.size())
        throw InvariantViolation("fourierBlockSystem: sample count mismatch");
    std::vector<Mat> b1, b2;
    for (const auto& h : hessians) {
        requireSymmetric(h, "fourierBlockSystem Hessian");
        b1.push_back(complexLinearPart(h));
        b2.push_back(complexAntilinearPart(h));
    }
    return BlockOperatorFamily(s, b1, b2, plateauT);
}

double fourierEta(int k, double lambda) {
    if (k <= 0 || lambda <= 0 || lambda > 1)
        throw OutOfRange("fourierEta: need k >= 1 and lambda in (0, 1]");
    return 2 * M_PI * k / lambda;
}

}  // namespace nvk
