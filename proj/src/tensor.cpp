#include "nvk/tensor.hpp"

#include "nvk/random.hpp"

namespace nvk {

void SignedComplex::validate() const {
    complex.validate();
    if (complex.grading.size() != 1)
        throw InvariantViolation(
            "SignedComplex: expected an ungraded complex (single grading "
            "label)");
    if (static_cast<int>(parity.size()) != space().dim())
        throw InvariantViolation("SignedComplex: parity size mismatch");
    for (int p : parity)
        if (p != 0 && p != 1)
            throw InvariantViolation("SignedComplex: parity must be 0 or 1");
    const NovMatrix& d = differential();
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (d.at(i, j).hasTerms() && parity[i] == parity[j])
                throw InvariantViolation(
                    "SignedComplex: differential does not flip parity at (" +
                    space().names[i] + ", " + space().names[j] + ")");
}

SignedComplex SignedComplex::make(FilteredVectorSpace space, NovMatrix d,
                                  std::vector<int> parity) {
    FilteredComplex c;
    c.grading = GradingSet::single();
    c.group = space.group;
    c.pieces = {std::move(space)};
    c.diff = {std::move(d)};
    SignedComplex s{std::move(c), std::move(parity)};
    s.validate();
    return s;
}

FilteredVectorSpace tensorLevels(const FilteredVectorSpace& C,
                                 const FilteredVectorSpace& D) {
    if (C.group != D.group)
        throw GroupMismatch(
            "tensorLevels: factors over different exponent groups; extend "
            "coefficients first");
    FilteredVectorSpace P;
    P.group = C.group;
    for (int i = 0; i < C.dim(); ++i)
        for (int j = 0; j < D.dim(); ++j) {
            P.names.push_back(C.names[i] + "⊗" + D.names[j]);
            P.levels.push_back(C.levels[i] + D.levels[j]);
        }
    return P;
}

SignedComplex tensorComplex(const SignedComplex& C, const SignedComplex& D) {
    C.validate();
    D.validate();
    if (C.space().group != D.space().group)
        throw GroupMismatch(
            "tensorComplex: factors over different exponent groups");
    const int m = C.space().dim(), n = D.space().dim();
    FilteredVectorSpace P = tensorLevels(C.space(), D.space());
    NovMatrix d(m * n, m * n, P.group);
    const NovMatrix& dC = C.differential();
    const NovMatrix& dD = D.differential();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            int col = i * n + j;
            for (int a = 0; a < m; ++a)
                if (dC.at(a, i).hasTerms() || !dC.at(a, i).isExact())
                    d.at(a * n + j, col) = dC.at(a, i);
            for (int b = 0; b < n; ++b)
                if (dD.at(b, j).hasTerms() || !dD.at(b, j).isExact()) {
                    NovikovElement e = dD.at(b, j);
                    if (C.parity[i] == 1) e = -e;
                    d.at(i * n + b, col) = d.at(i * n + b, col) + e;
                }
        }
    std::vector<int> parity(size_t(m) * n, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            parity[size_t(i) * n + j] = (C.parity[i] + D.parity[j]) % 2;
    return SignedComplex::make(std::move(P), std::move(d), std::move(parity));
}

namespace {

// ell-tensor through a pair of orthogonal bases: express the probe in the
// given bases (identity when empty) and evaluate eq-(7.1)-style additivity.
Extended productLevelVia(const NovMatrix& coeffs,  // m x n matrix of lambdas
                         const std::vector<Extended>& levC,
                         const std::vector<Extended>& levD) {
    Extended best = Extended::negInf();
    for (int i = 0; i < coeffs.rows(); ++i)
        for (int j = 0; j < coeffs.cols(); ++j) {
            const NovikovElement& l = coeffs.at(i, j);
            if (!l.hasTerms()) continue;
            best = maxExt(best, levC[i] + levD[j] - l.valuation());
        }
    return best;
}

}  // namespace

BasisIndependenceReport checkBasisIndependence(
    const FilteredVectorSpace& C, const FilteredVectorSpace& D,
    const std::vector<Chain>& altC, const std::vector<Chain>& altD,
    int probes, unsigned long long seed) {
    auto prepare = [](const FilteredVectorSpace& V,
                      const std::vector<Chain>& alt)
        -> std::pair<NovMatrix, std::vector<Extended>> {
        if (alt.empty()) {
            std::vector<Extended> lv;
            for (const auto& l : V.levels) lv.push_back(Extended(l));
            return {NovMatrix::identity(V.dim(), V.group), lv};
        }
        if (static_cast<int>(alt.size()) != V.dim())
            throw NotIndependent(
                "checkBasisIndependence: alternative basis has wrong size");
        OrthogonalityReport rep = checkOrthogonality(alt, V);
        if (!rep.independentOverField)
            throw NotIndependent(
                "checkBasisIndependence: alternative basis is dependent");
        if (!rep.orthogonal)
            throw NotOrthogonal(
                "checkBasisIndependence: alternative basis fails the "
                "orthogonality criterion");
        NovMatrix B(V.dim(), V.dim(), V.group);
        std::vector<Extended> lv;
        for (int j = 0; j < V.dim(); ++j) {
            B.setColumn(j, alt[j]);
            lv.push_back(chainLevel(alt[j], V));
        }
        return {B, lv};
    };

    auto [BC, levAltC] = prepare(C, altC);
    auto [BD, levAltD] = prepare(D, altD);
    NovMatrix BCinv = invertMatrix(BC);
    NovMatrix BDinv = invertMatrix(BD);
    std::vector<Extended> levC, levD;
    for (const auto& l : C.levels) levC.push_back(Extended(l));
    for (const auto& l : D.levels) levD.push_back(Extended(l));

    Rng rng(seed);
    BasisIndependenceReport out;
    for (int p = 0; p < probes; ++p) {
        // random probe in distinguished coordinates
        NovMatrix lam(C.dim(), D.dim(), C.group);
        bool nonzero = false;
        for (int i = 0; i < C.dim(); ++i)
            for (int j = 0; j < D.dim(); ++j) {
                if (!rng.chance(0.7)) continue;
                Rat c = rng.ratIn(-3, 3);
                if (c == 0) continue;
                Rat e = C.group.isTrivial()
                            ? Rat(0)
                            : Rat(rng.intIn(0, 4)) * C.group.generator();
                lam.at(i, j) = NovikovElement::monomial(c, e, C.group);
                nonzero = true;
            }
        if (!nonzero) {
            lam.at(0, 0) = NovikovElement::one(C.group);
        }
        // coefficients in the alternative bases: mu = BCinv * lam * BDinv^T
        NovMatrix mu(C.dim(), D.dim(), C.group);
        for (int i = 0; i < C.dim(); ++i)
            for (int j = 0; j < D.dim(); ++j) {
                NovikovElement s = NovikovElement::zero(C.group);
                for (int a = 0; a < C.dim(); ++a)
                    for (int b = 0; b < D.dim(); ++b) {
                        const auto& x = BCinv.at(i, a);
                        const auto& y = BDinv.at(j, b);
                        if ((!x.hasTerms() && x.isExact()) ||
                            (!y.hasTerms() && y.isExact()))
                            continue;
                        s = s + x * lam.at(a, b) * y;
                    }
                mu.at(i, j) = s;
            }
        Extended l1 = productLevelVia(lam, levC, levD);
        Extended l2 = productLevelVia(mu, levAltC, levAltD);
        ++out.probes;
        if (l1 != l2) {
            out.allEqual = false;
            throw InvariantViolation(
                "checkBasisIndependence: product level differs across bases "
                "(" + l1.str() + " vs " + l2.str() + ")");
        }
    }
    return out;
}

ProductBoundReport verifyProductBounds(const SignedComplex& C,
                                       const SignedComplex& D,
                                       const ReduceOptions& opts) {
    SignedComplex P = tensorComplex(C, D);
    ProductBoundReport rep;
    rep.depthC = boundaryDepth(C.complex, opts);
    rep.depthD = boundaryDepth(D.complex, opts);
    rep.depthProduct = boundaryDepth(P.complex, opts);
    rep.dimHC = homologyDim(C.complex, 0, opts);
    rep.dimHD = homologyDim(D.complex, 0, opts);
    rep.boundA = rep.depthProduct >= std::min(rep.depthC, rep.depthD);
    rep.boundB1 = rep.dimHD == 0 || rep.depthProduct >= rep.depthC;
    rep.boundB2 = rep.dimHC == 0 || rep.depthProduct >= rep.depthD;
    return rep;
}

}  // namespace nvk
