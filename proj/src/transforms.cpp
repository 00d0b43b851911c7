#include "nvk/transforms.hpp"

#include <sstream>

namespace nvk {

FilteredComplex extendCoefficients(const FilteredComplex& C,
                                   const ExponentGroup& gPrime) {
    if (!C.group.subgroupOf(gPrime))
        throw NotASupergroup("extendCoefficients: <" + C.group.str() +
                             "> is not contained in <" + gPrime.str() + ">");
    FilteredComplex D = C;
    D.group = gPrime;
    for (auto& p : D.pieces) p.group = gPrime;
    for (auto& d : D.diff) d = d.overGroup(gPrime);
    return D;
}

FilteredComplex applyShiftIsomorphism(const FilteredComplex& C,
                                      const ShiftIsomorphism& iso,
                                      const ReduceOptions& opts) {
    const GradingSet& g = C.grading;
    const int n = g.size();
    if (static_cast<int>(iso.phi.size()) != n ||
        static_cast<int>(iso.sigma.size()) != n ||
        static_cast<int>(iso.Phi.size()) != n)
        throw Error("applyShiftIsomorphism: data size mismatch");

    // phi must be a successor-equivariant bijection.
    std::vector<bool> hit(n, false);
    for (int k = 0; k < n; ++k) {
        if (iso.phi[k] < 0 || iso.phi[k] >= n || hit[iso.phi[k]])
            throw NotEquivariant("applyShiftIsomorphism: phi is not a "
                                 "bijection on the grading set");
        hit[iso.phi[k]] = true;
    }
    for (int k = 0; k < n; ++k) {
        if (iso.phi[g.succ[k]] != g.succ[iso.phi[k]])
            throw NotEquivariant(
                "applyShiftIsomorphism: phi(k+1) != phi(k)+1 at grading " +
                g.labels[k]);
        if (iso.sigma[g.succ[k]] != iso.sigma[k])
            throw NotEquivariant(
                "applyShiftIsomorphism: sigma(k+1) != sigma(k) at grading " +
                g.labels[k]);
    }

    FilteredComplex D;
    D.grading = g;
    D.group = C.group;
    D.pieces.resize(n);
    D.diff.resize(n);
    for (int k = 0; k < n; ++k) {
        FilteredVectorSpace sp;
        sp.group = C.group;
        sp.names.reserve(C.pieces[k].dim());
        for (const auto& name : C.pieces[k].names) sp.names.push_back(name + "'");
        for (const auto& l : C.pieces[k].levels) sp.levels.push_back(l + iso.sigma[k]);
        D.pieces[iso.phi[k]] = std::move(sp);
    }

    // Conjugated differential: delta_{phi(k)} = Phi_k d_k Phi_{succ k}^{-1}.
    std::vector<NovMatrix> PhiInv(n);
    for (int k = 0; k < n; ++k) {
        if (iso.Phi[k].rows() != C.pieces[k].dim() ||
            iso.Phi[k].cols() != C.pieces[k].dim())
            throw Error("applyShiftIsomorphism: Phi block shape mismatch");
        try {
            PhiInv[k] = invertMatrix(iso.Phi[k], opts.cutoffOverride);
        } catch (const Error&) {
            throw NotFiltrationIso(
                "applyShiftIsomorphism: Phi is singular in grading " +
                g.labels[k]);
        }
    }
    for (int k = 0; k < n; ++k)
        D.diff[iso.phi[k]] = iso.Phi[k].times(C.diff[k]).times(PhiInv[g.succ[k]]);

    // Filtration-isomorphism condition, verified on generators both ways:
    // ell_D(Phi e_j) = ell_C(e_j) + sigma(k) and ell_C(Phi^-1 f_j) =
    // ell_D(f_j) - sigma(k).
    for (int k = 0; k < n; ++k) {
        const FilteredVectorSpace& src = C.pieces[k];
        const FilteredVectorSpace& dst = D.pieces[iso.phi[k]];
        for (int j = 0; j < src.dim(); ++j) {
            Extended lvl = chainLevel(iso.Phi[k].column(j), dst);
            if (lvl != Extended(src.levels[j] + iso.sigma[k]))
                throw NotFiltrationIso(
                    "applyShiftIsomorphism: generator " + src.names[j] +
                    " maps to level " + lvl.str() + ", expected " +
                    ratStr(src.levels[j] + iso.sigma[k]));
        }
        for (int j = 0; j < dst.dim(); ++j) {
            Extended lvl = chainLevel(PhiInv[k].column(j), src);
            if (lvl != Extended(dst.levels[j] - iso.sigma[k]))
                throw NotFiltrationIso(
                    "applyShiftIsomorphism: inverse image of " + dst.names[j] +
                    " has level " + lvl.str() + ", expected " +
                    ratStr(dst.levels[j] - iso.sigma[k]));
        }
    }
    D.validate();
    return D;
}

bool QuasiequivalenceReport::bound() const {
    Rat d = depthC - depthD;
    return abs(d) <= c;
}

QuasiequivalenceReport quasiequivalenceAudit(
    const FilteredMap& Phi, const FilteredMap& Psi, const FilteredMap& K1,
    const FilteredMap& K2, const Rat& c1, const Rat& c2, const Rat& c,
    const ReduceOptions& opts) {
    if (c1 + c2 > c)
        throw UsageError("quasiequivalenceAudit: c1 + c2 must be <= c");
    const FilteredComplex& C = *Phi.source;
    const FilteredComplex& D = *Phi.target;
    if (Psi.source != &D || Psi.target != &C || K1.source != &C ||
        K1.target != &C || K2.source != &D || K2.target != &D)
        throw UsageError("quasiequivalenceAudit: inconsistent endpoints");

    FilteredMap phi = Phi;
    phi.shift = c1;
    phi.validate();
    FilteredMap psi = Psi;
    psi.shift = c2;
    psi.validate();
    FilteredMap k1 = K1;
    k1.shift = c;
    k1.degree = 1;
    k1.validate(false);
    FilteredMap k2 = K2;
    k2.shift = c;
    k2.degree = 1;
    k2.validate(false);

    const GradingSet& g = C.grading;
    auto checkIdentity = [&](const FilteredComplex& E, const NovMatrix& compK,
                             const FilteredMap& K, int k, const char* side) {
        // comp - I = K_{pred k} d[pred k] + d[k] K_k  on grading k.
        NovMatrix want = compK;
        for (int i = 0; i < want.rows(); ++i)
            want.at(i, i) = want.at(i, i) - NovikovElement::one(E.group);
        NovMatrix got = K.blocks[g.pred(k)].times(E.diff[g.pred(k)]);
        NovMatrix second = E.diff[k].times(K.blocks[k]);
        for (int i = 0; i < want.rows(); ++i)
            for (int j = 0; j < want.cols(); ++j) {
                NovikovElement r =
                    want.at(i, j) - got.at(i, j) - second.at(i, j);
                if (r.hasTerms())
                    throw HomotopyIdentityFails(
                        std::string("quasiequivalenceAudit: homotopy identity "
                                    "fails on ") +
                        side + " in grading " + g.labels[k] + " at (" +
                        E.pieces[k].names[i] + ", " + E.pieces[k].names[j] +
                        ")");
            }
    };
    for (int k = 0; k < g.size(); ++k) {
        checkIdentity(C, psi.blocks[k].times(phi.blocks[k]), k1, k, "C");
        checkIdentity(D, phi.blocks[k].times(psi.blocks[k]), k2, k, "D");
    }

    QuasiequivalenceReport rep;
    rep.c1 = c1;
    rep.c2 = c2;
    rep.c = c;
    for (int k = 0; k < g.size(); ++k) {
        rep.depthCGraded.push_back(boundaryDepthGraded(C, k, opts));
        rep.depthDGraded.push_back(boundaryDepthGraded(D, k, opts));
    }
    rep.depthC = Rat(0);
    rep.depthD = Rat(0);
    for (int k = 0; k < g.size(); ++k) {
        rep.depthC = std::max(rep.depthC, rep.depthCGraded[k]);
        rep.depthD = std::max(rep.depthD, rep.depthDGraded[k]);
    }
    if (!rep.bound())
        throw InvariantViolation(
            "quasiequivalenceAudit: |b(C) - b(D)| = " +
            ratStr(abs(rep.depthC - rep.depthD)) + " exceeds c = " + ratStr(c));
    return rep;
}

}  // namespace nvk
