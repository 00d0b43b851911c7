#include "nvk/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nvk {

namespace {

// Elimination state over the standardized matrix. Invariant: Ahat * V = U * M
// with U, V, Uinv products of orthonormality-preserving operations (entries
// in the nonnegative-valuation subring, invertible reductions).
struct Elimination {
    NovMatrix M, V, U, Uinv;
    std::vector<Rat> pivotVals;  // nondecreasing
    ExponentGroup ext;
    Extended W;  // working cutoff for divisions
    int rank = 0;
};

Elimination eliminate(const NovMatrix& Ahat, const ExponentGroup& ext,
                      const Rat& cutoff) {
    Elimination e;
    e.ext = ext;
    e.W = Extended(cutoff);
    e.M = Ahat;
    e.V = NovMatrix::identity(Ahat.cols(), ext);
    e.U = NovMatrix::identity(Ahat.rows(), ext);
    e.Uinv = NovMatrix::identity(Ahat.rows(), ext);
    const int n = Ahat.rows(), m = Ahat.cols();

    auto swapRows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < m; ++j) std::swap(e.M.at(a, j), e.M.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(e.U.at(i, a), e.U.at(i, b));
        for (int j = 0; j < n; ++j) std::swap(e.Uinv.at(a, j), e.Uinv.at(b, j));
    };
    auto swapCols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < n; ++i) std::swap(e.M.at(i, a), e.M.at(i, b));
        for (int i = 0; i < m; ++i) std::swap(e.V.at(i, a), e.V.at(i, b));
    };
    // row_i -= f * row_k  (M);  U col_k += f * U col_i;  Uinv row_i -= f row_k
    auto rowOp = [&](int i, int k, const NovikovElement& f) {
        for (int j = 0; j < m; ++j)
            e.M.at(i, j) = e.M.at(i, j) - f * e.M.at(k, j);
        for (int r = 0; r < n; ++r)
            e.U.at(r, k) = e.U.at(r, k) + f * e.U.at(r, i);
        for (int j = 0; j < n; ++j)
            e.Uinv.at(i, j) = e.Uinv.at(i, j) - f * e.Uinv.at(k, j);
    };
    // col_j -= f * col_k  (M and V)
    auto colOp = [&](int j, int k, const NovikovElement& f) {
        for (int i = 0; i < n; ++i)
            e.M.at(i, j) = e.M.at(i, j) - f * e.M.at(i, k);
        for (int i = 0; i < m; ++i)
            e.V.at(i, j) = e.V.at(i, j) - f * e.V.at(i, k);
    };

    int t = 0;
    while (t < std::min(n, m)) {
        // minimal-valuation pivot; ties by smallest source (column) index,
        // then smallest target (row) index.
        int pi = -1, pj = -1;
        Extended best = Extended::posInf();
        for (int j = t; j < m; ++j)
            for (int i = t; i < n; ++i) {
                const NovikovElement& x = e.M.at(i, j);
                if (!x.hasTerms()) continue;
                Extended v = x.valuation();
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swapRows(t, pi);
        swapCols(t, pj);
        NovikovElement pivot = e.M.at(t, t);
        NovikovElement pinv = pivot.inverse(e.W);
        for (int i = t + 1; i < n; ++i) {
            if (!e.M.at(i, t).hasTerms()) continue;
            rowOp(i, t, e.M.at(i, t) * pinv);
        }
        for (int j = t + 1; j < m; ++j) {
            if (!e.M.at(t, j).hasTerms()) continue;
            colOp(j, t, e.M.at(t, j) * pinv);
        }
        e.pivotVals.push_back(best.value());
        ++t;
    }
    e.rank = t;
    return e;
}

struct StandardizedStep {
    ExponentGroup ext;
    NovMatrix Ahat;
    Rat cutoff;
};

StandardizedStep standardizeStep(const NovMatrix& A,
                                 const FilteredVectorSpace& src,
                                 const FilteredVectorSpace& tgt,
                                 const ReduceOptions& opts) {
    if (A.rows() != tgt.dim() || A.cols() != src.dim())
        throw Error("reduce: matrix shape does not match spaces");
    if (src.group != tgt.group || A.group() != src.group)
        throw GroupMismatch("reduce: spaces and matrix must share a group");
    StandardizedStep s;
    s.ext = src.group;
    for (const auto& l : src.levels) s.ext = s.ext.joinedWith(abs(l));
    for (const auto& l : tgt.levels) s.ext = s.ext.joinedWith(abs(l));
    s.Ahat = NovMatrix(A.rows(), A.cols(), s.ext);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            s.Ahat.at(i, j) = A.at(i, j)
                                  .overGroup(s.ext)
                                  .shifted(src.levels[j] - tgt.levels[i]);
    s.cutoff = opts.cutoffOverride ? *opts.cutoffOverride
                                   : workingCutoffPolicy(A, src, tgt);
    return s;
}

Chain destandardize(const Chain& c, const FilteredVectorSpace& sp,
                    const ExponentGroup& ext) {
    Chain r(c.size(), NovikovElement::zero(ext));
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].shifted(sp.levels[i]);
    return r;
}

Chain standardizeChain(const Chain& c, const FilteredVectorSpace& sp,
                       const ExponentGroup& ext) {
    Chain r(c.size(), NovikovElement::zero(ext));
    for (size_t i = 0; i < c.size(); ++i)
        r[i] = c[i].overGroup(ext).shifted(sp.levels[i] * -1);
    return r;
}

struct StepReduction {
    Elimination elim;
    StandardizedStep std;
    // Normalized primitives: Ahat yhat_t = T^{a_t} xhat_t.
    std::vector<Chain> yhat, xhat;
};

StepReduction reduceStep(const NovMatrix& A, const FilteredVectorSpace& src,
                         const FilteredVectorSpace& tgt,
                         const ReduceOptions& opts, bool doubled) {
    StepReduction r;
    r.std = standardizeStep(A, src, tgt, opts);
    Rat W = doubled ? Rat(2 * r.std.cutoff) : r.std.cutoff;
    r.elim = eliminate(r.std.Ahat, r.std.ext, W);
    for (int t = 0; t < r.elim.rank; ++t) {
        const Rat& a = r.elim.pivotVals[t];
        NovikovElement unit =
            r.elim.M.at(t, t).shifted(-a).inverse(Extended(W));
        Chain y = scaleChain(r.elim.V.column(t), unit);
        r.yhat.push_back(std::move(y));
        r.xhat.push_back(r.elim.U.column(t));
    }
    return r;
}

// B x for standardized target chains supported on Im Ahat: coordinates in
// the xhat basis are (Uinv xhat-coords); nullopt when x is not in the image.
std::optional<Chain> applyB(const StepReduction& r, const Chain& xstd) {
    Chain xi = r.elim.Uinv.apply(xstd);
    for (int t = r.elim.rank; t < static_cast<int>(xi.size()); ++t)
        if (xi[t].hasTerms()) return std::nullopt;
    Chain y(r.std.Ahat.cols(), NovikovElement::zero(r.std.ext));
    for (int t = 0; t < r.elim.rank; ++t) {
        if (!xi[t].hasTerms() && xi[t].isExact()) continue;
        NovikovElement coef = xi[t].shifted(-r.elim.pivotVals[t]);
        y = addChains(y, scaleChain(r.yhat[t], coef));
    }
    return y;
}

void checkStability(const StepReduction& a, const StepReduction& b) {
    if (a.elim.rank != b.elim.rank || a.elim.pivotVals != b.elim.pivotVals)
        throw TruncationUnstable(
            "reduce: doubling the working cutoff changed the reduction "
            "invariants; supply a larger --cutoff");
}

}  // namespace

Rat workingCutoffPolicy(const NovMatrix& A, const FilteredVectorSpace& src,
                        const FilteredVectorSpace& tgt) {
    Rat maxL, minL;
    bool first = true;
    for (const auto& sp : {src, tgt})
        for (const auto& l : sp.levels) {
            if (first) {
                maxL = minL = l;
                first = false;
            } else {
                maxL = std::max(maxL, l);
                minL = std::min(minL, l);
            }
        }
    Rat spread = first ? Rat(0) : Rat(maxL - minL);
    std::set<Rat> exps;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            for (const auto& t : A.at(i, j).terms()) exps.insert(t.exp);
    Rat s(0);
    for (const auto& e : exps) s += abs(e);
    return spread + s + 1;
}

ReductionCertificate reduce(const NovMatrix& A, const FilteredVectorSpace& src,
                            const FilteredVectorSpace& tgt,
                            const ReduceOptions& opts) {
    StepReduction r = reduceStep(A, src, tgt, opts, false);
    if (opts.verifyDoubling) {
        StepReduction r2 = reduceStep(A, src, tgt, opts, true);
        checkStability(r, r2);
    }

    ReductionCertificate cert;
    cert.certGroup = r.std.ext;
    cert.workingCutoff = r.std.cutoff;
    for (int t = 0; t < r.elim.rank; ++t) {
        ReductionPair p;
        p.gap = r.elim.pivotVals[t];
        p.primitive = destandardize(r.yhat[t], src, r.std.ext);
        Chain xs = scaleChain(
            r.xhat[t],
            NovikovElement::monomial(Rat(1), r.elim.pivotVals[t], r.std.ext));
        p.boundary = destandardize(xs, tgt, r.std.ext);
        cert.pairs.push_back(std::move(p));
    }
    std::stable_sort(cert.pairs.begin(), cert.pairs.end(),
                     [](const ReductionPair& a, const ReductionPair& b) {
                         return a.gap > b.gap;
                     });
    for (int t = r.elim.rank; t < A.cols(); ++t)
        cert.unpairedSource.push_back(
            destandardize(r.elim.V.column(t), src, r.std.ext));
    for (int t = r.elim.rank; t < A.rows(); ++t)
        cert.unpairedTarget.push_back(
            destandardize(r.elim.U.column(t), tgt, r.std.ext));
    return cert;
}

DepthWitness depthWitness(const NovMatrix& A, const FilteredVectorSpace& src,
                          const FilteredVectorSpace& tgt,
                          const ReduceOptions& opts) {
    StepReduction r = reduceStep(A, src, tgt, opts, false);
    if (r.elim.rank == 0) throw ZeroMap("depthWitness: the map is zero");
    if (opts.verifyDoubling) checkStability(r, reduceStep(A, src, tgt, opts, true));

    // Pair realizing the largest gap (pivot valuations are nondecreasing).
    const Rat beta = r.elim.pivotVals[r.elim.rank - 1];
    int K = 0;
    while (r.elim.pivotVals[K] != beta) ++K;

    Chain xs = scaleChain(r.xhat[K], NovikovElement::monomial(
                                         Rat(1), beta, r.std.ext));
    Chain xPrime = destandardize(xs, tgt, r.std.ext);

    // Split x' along cosets of the original group and pick the part whose
    // cheapest primitive is most expensive relative to its shift.
    const ExponentGroup& orig = src.group;
    std::set<Rat> reps;
    for (const auto& coord : xPrime)
        for (const auto& term : coord.terms()) reps.insert(orig.cosetRep(term.exp));
    if (reps.empty()) throw Error("depthWitness: empty witness boundary");

    bool have = false;
    Rat bestQ, bestRep;
    Chain bestX, bestY;
    for (const Rat& g : reps) {
        Chain part(xPrime.size(), NovikovElement::zero(orig));
        bool nonzero = false;
        for (size_t i = 0; i < xPrime.size(); ++i) {
            part[i] = xPrime[i].cosetPart(g, orig);
            if (part[i].hasTerms()) nonzero = true;
        }
        if (!nonzero) continue;
        Chain partExt(part.size(), NovikovElement::zero(r.std.ext));
        for (size_t i = 0; i < part.size(); ++i)
            partExt[i] = part[i].overGroup(r.std.ext);
        auto y = applyB(r, standardizeChain(partExt, tgt, r.std.ext));
        if (!y) throw Error("depthWitness: coset part left the image");
        Chain yDe = destandardize(*y, src, r.std.ext);
        Extended q = chainLevel(yDe, src.overGroup(r.std.ext)) - Extended(g);
        if (!have || Extended(bestQ) < q) {
            have = true;
            bestQ = q.value();
            bestRep = g;
            bestX = std::move(part);
            bestY = std::move(yDe);
        }
    }
    if (!have) throw Error("depthWitness: no nonzero coset part");

    DepthWitness w;
    w.boundary = bestX;
    w.primitive = Chain(bestY.size(), NovikovElement::zero(orig));
    for (size_t i = 0; i < bestY.size(); ++i)
        w.primitive[i] = bestY[i].subgroupPart(orig);
    w.gap = beta;

    // Certify: A y0 = x0 below the working cutoff, and the gap is attained.
    Chain img = A.apply(w.primitive);
    Extended bound(r.std.cutoff);
    for (size_t i = 0; i < img.size(); ++i) {
        Extended b = minExt(bound, minExt(img[i].cutoff(), w.boundary[i].cutoff()));
        if (!img[i].agreesBelow(w.boundary[i], b))
            throw InvariantViolation(
                "depthWitness: A y0 != x0 (coset projection failed)");
    }
    Extended ly = chainLevel(w.primitive, src);
    Extended lx = chainLevel(w.boundary, tgt);
    if (ly - lx != Extended(beta))
        throw InvariantViolation(
            "depthWitness: witness gap " + (ly - lx).str() +
            " does not attain the boundary depth " + ratStr(beta));
    return w;
}

Rat boundaryDepthGraded(const FilteredComplex& C, int k,
                        const ReduceOptions& opts) {
    const NovMatrix& A = C.diff[k];
    const FilteredVectorSpace& src = C.pieces[C.grading.succ[k]];
    const FilteredVectorSpace& tgt = C.pieces[k];
    if (A.allEntriesZeroBelowCutoff()) return Rat(0);
    return reduce(A, src, tgt, opts).largestGap();
}

Rat boundaryDepth(const FilteredComplex& C, const ReduceOptions& opts) {
    Rat best(0);
    for (int k = 0; k < C.grading.size(); ++k)
        best = std::max(best, boundaryDepthGraded(C, k, opts));
    return best;
}

std::vector<int> differentialRanks(const FilteredComplex& C,
                                   const ReduceOptions& opts) {
    std::vector<int> r(C.grading.size(), 0);
    for (int k = 0; k < C.grading.size(); ++k) {
        const NovMatrix& A = C.diff[k];
        if (A.allEntriesZeroBelowCutoff()) continue;
        r[k] = reduce(A, C.pieces[C.grading.succ[k]], C.pieces[k], opts).rank();
    }
    return r;
}

int homologyDim(const FilteredComplex& C, int k, const ReduceOptions& opts) {
    std::vector<int> r = differentialRanks(C, opts);
    int outOf = r[C.grading.pred(k)];
    return C.pieces[k].dim() - r[k] - outOf;
}

std::optional<Chain> solveLinear(const NovMatrix& A, const Chain& v,
                                 const std::optional<Rat>& cutoff) {
    FilteredVectorSpace src{std::vector<std::string>(A.cols(), "s"),
                            std::vector<Rat>(A.cols(), Rat(0)), A.group()};
    FilteredVectorSpace tgt{std::vector<std::string>(A.rows(), "t"),
                            std::vector<Rat>(A.rows(), Rat(0)), A.group()};
    ReduceOptions opts;
    opts.cutoffOverride = cutoff;
    StepReduction r = reduceStep(A, src, tgt, opts, false);
    Chain xi = r.elim.Uinv.apply(v);
    for (int t = r.elim.rank; t < static_cast<int>(xi.size()); ++t)
        if (xi[t].hasTerms()) return std::nullopt;
    Chain c(A.cols(), NovikovElement::zero(r.std.ext));
    Extended W(r.std.cutoff * 2);
    for (int t = 0; t < r.elim.rank; ++t) {
        if (!xi[t].hasTerms() && xi[t].isExact()) continue;
        NovikovElement coef = xi[t] * r.elim.M.at(t, t).inverse(W);
        c = addChains(c, scaleChain(r.elim.V.column(t), coef));
    }
    Chain out(A.cols(), NovikovElement::zero(A.group()));
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i].subgroupPart(A.group());
    return out;
}

NovMatrix invertMatrix(const NovMatrix& A, const std::optional<Rat>& cutoff) {
    if (A.rows() != A.cols()) throw Error("invertMatrix: not square");
    NovMatrix inv(A.rows(), A.cols(), A.group());
    for (int j = 0; j < A.cols(); ++j) {
        Chain e(A.rows(), NovikovElement::zero(A.group()));
        e[j] = NovikovElement::one(A.group());
        auto c = solveLinear(A, e, cutoff);
        if (!c) throw Error("invertMatrix: matrix is singular");
        inv.setColumn(j, *c);
    }
    return inv;
}

}  // namespace nvk
