#include "nvk/quantum.hpp"

namespace nvk {

void QuantumCorrection::validate() const {
    deformed.validate();
    const int n = deformed.grading.size();
    if (static_cast<int>(base.size()) != n ||
        static_cast<int>(gap.size()) != n)
        throw InvariantViolation("QuantumCorrection: block count mismatch");
    for (const auto& p : deformed.pieces)
        for (const auto& l : p.levels)
            if (l != 0)
                throw InvariantViolation(
                    "QuantumCorrection: all levels must be zero");
    for (int k = 0; k < n; ++k) {
        if (gap[k] <= 0 || !deformed.group.contains(gap[k]))
            throw InvariantViolation(
                "QuantumCorrection: gap mu(" + deformed.grading.labels[k] +
                ") must be a positive element of the exponent group");
        size_t want = size_t(deformed.pieces[k].dim()) *
                      deformed.pieces[deformed.grading.succ[k]].dim();
        if (base[k].size() != want)
            throw InvariantViolation(
                "QuantumCorrection: base block shape mismatch in grading " +
                deformed.grading.labels[k]);
    }
    // base differential squares to zero (exact rational arithmetic)
    for (int k = 0; k < n; ++k) {
        int kk = deformed.grading.succ[k];
        int rows = deformed.pieces[k].dim();
        int mid = deformed.pieces[kk].dim();
        int cols = deformed.pieces[deformed.grading.succ[kk]].dim();
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                Rat s(0);
                for (int t = 0; t < mid; ++t)
                    s += base[k][size_t(i) * mid + t] *
                         base[kk][size_t(t) * cols + j];
                if (s != 0)
                    throw InvariantViolation(
                        "QuantumCorrection: base differential does not square "
                        "to zero");
            }
    }
}

GapReport validateGap(const QuantumCorrection& q) {
    GapReport rep;
    const int n = q.deformed.grading.size();
    rep.tightest.assign(n, Extended::posInf());
    for (int k = 0; k < n; ++k) {
        const NovMatrix& d = q.deformed.diff[k];
        int srcDim = q.deformed.pieces[q.deformed.grading.succ[k]].dim();
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < srcDim; ++j) {
                NovikovElement dev =
                    d.at(i, j) - NovikovElement::constant(
                                     q.base[k][size_t(i) * srcDim + j],
                                     q.deformed.group);
                if (!dev.hasTerms()) continue;
                Extended nu = dev.valuation();
                rep.tightest[k] = minExt(rep.tightest[k], nu);
                if (nu < Extended(q.gap[k])) {
                    GapEntryReport e;
                    e.grading = k;
                    e.target = q.deformed.pieces[k].names[i];
                    e.source =
                        q.deformed.pieces[q.deformed.grading.succ[k]].names[j];
                    e.required = q.gap[k];
                    e.actual = nu;
                    e.ok = false;
                    rep.violations.push_back(std::move(e));
                }
            }
    }
    return rep;
}

void requireValidGap(const QuantumCorrection& q) {
    GapReport rep = validateGap(q);
    if (!rep.valid()) {
        const auto& v = rep.violations.front();
        throw GapViolated("quantum correction: deformation entry (" +
                          v.target + ", " + v.source + ") has valuation " +
                          v.actual.str() + " < required mu = " +
                          ratStr(v.required));
    }
}

int rationalRank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

int baseRank(const QuantumCorrection& q, int k) {
    int rows = q.deformed.pieces[k].dim();
    int cols = q.deformed.pieces[q.deformed.grading.succ[k]].dim();
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m[i][j] = q.base[k][size_t(i) * cols + j];
    return rationalRank(std::move(m));
}

int baseHomologyDim(const QuantumCorrection& q, int k) {
    int into = baseRank(q, k);
    int outOf = baseRank(q, q.deformed.grading.pred(k));
    return q.deformed.pieces[k].dim() - into - outOf;
}

std::pair<int, int> rankCompare(const QuantumCorrection& q, int k,
                                const ReduceOptions& opts) {
    int r0 = baseRank(q, k);
    const NovMatrix& d = q.deformed.diff[k];
    int r = 0;
    if (!d.allEntriesZeroBelowCutoff())
        r = reduce(d, q.deformed.pieces[q.deformed.grading.succ[k]],
                   q.deformed.pieces[k], opts)
                .rank();
    if (r0 > r)
        throw InvariantViolation(
            "rankCompare: base rank exceeds deformed rank in grading " +
            q.deformed.grading.labels[k]);
    return {r0, r};
}

Alternative classify(const QuantumCorrection& q, int k,
                     const ReduceOptions& opts) {
    const GradingSet& g = q.deformed.grading;
    int km1 = g.pred(k);
    Alternative alt;
    alt.depthK = boundaryDepthGraded(q.deformed, k, opts);
    alt.depthKm1 = boundaryDepthGraded(q.deformed, km1, opts);
    alt.dimHLambda = homologyDim(q.deformed, k, opts);
    alt.dimHBase = baseHomologyDim(q, k);
    alt.muK = q.gap[k];
    alt.muKm1 = q.gap[km1];

    bool i1 = alt.depthK == 0 && alt.depthKm1 == 0 &&
              alt.dimHLambda == alt.dimHBase;
    bool i2 = (alt.depthK >= alt.muK || alt.depthKm1 >= alt.muKm1) &&
              alt.dimHLambda < alt.dimHBase;
    if (i1 == i2)
        throw InvariantViolation(
            "classify: the dichotomy failed in grading " + g.labels[k] +
            " (b_k=" + ratStr(alt.depthK) + ", b_{k-1}=" +
            ratStr(alt.depthKm1) + ", dim H_Lambda=" +
            std::to_string(alt.dimHLambda) + ", dim H_base=" +
            std::to_string(alt.dimHBase) + ")");
    alt.first = i1;
    return alt;
}

}  // namespace nvk
