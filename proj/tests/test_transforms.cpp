#include <doctest.h>

#include "nvk/generate.hpp"
#include "nvk/io.hpp"
#include "nvk/transforms.hpp"
#include "oracles.hpp"

using namespace nvk;

TEST_CASE("coefficient extension preserves data and depth") {
    Rng rng(11);
    StepInstance ins = randomStepInstance(rng, 3, 6);
    FilteredComplex c = makeTwoTermComplex(ins.src, ins.tgt, ins.A);
    Rat b = boundaryDepth(c);

    SUBCASE("identity extension is bit-identical") {
        FilteredComplex e = extendCoefficients(c, c.group);
        CHECK(serializeComplex(e) == serializeComplex(c));
    }
    SUBCASE("proper extensions keep the depth") {
        FilteredComplex e =
            extendCoefficients(c, ExponentGroup::cyclic(Rat(1, 2)));
        FilteredComplex e2 =
            extendCoefficients(e, ExponentGroup::cyclic(Rat(1, 4)));
        CHECK(boundaryDepth(e) == b);
        CHECK(boundaryDepth(e2) == b);
    }
    SUBCASE("non-supergroups are rejected") {
        CHECK_THROWS_AS(
            extendCoefficients(c, ExponentGroup::cyclic(Rat(2))),
            NotASupergroup);
        CHECK_THROWS_AS(extendCoefficients(c, ExponentGroup::trivial()),
                        NotASupergroup);
    }
}

TEST_CASE("half-step pair keeps depth under extension") {
    ExponentGroup half = ExponentGroup::cyclic(Rat(1, 2));
    FilteredVectorSpace src{{"y"}, {Rat(0)}, half};
    FilteredVectorSpace tgt{{"x"}, {Rat(0)}, half};
    NovMatrix A(1, 1, half);
    A.at(0, 0) = NovikovElement::monomial(Rat(1), Rat(1, 2), half);
    FilteredComplex c = makeTwoTermComplex(src, tgt, A);
    CHECK(boundaryDepth(c) == Rat(1, 2));
    FilteredComplex e = extendCoefficients(c, ExponentGroup::cyclic(Rat(1, 4)));
    CHECK(boundaryDepth(e) == Rat(1, 2));
}

TEST_CASE("shift isomorphisms") {
    Rng rng(22);
    FilteredComplex c = randomSlackComplex(rng, 3, 3);

    SUBCASE("identity data returns the same filtration") {
        ShiftIsomorphism iso;
        iso.phi = {0, 1, 2};
        iso.sigma.assign(3, Rat(0));
        for (int k = 0; k < 3; ++k)
            iso.Phi.push_back(NovMatrix::identity(c.pieces[k].dim(), c.group));
        FilteredComplex d = applyShiftIsomorphism(c, iso);
        for (int k = 0; k < 3; ++k) {
            CHECK(d.pieces[k].levels == c.pieces[k].levels);
            CHECK(boundaryDepthGraded(d, k) == boundaryDepthGraded(c, k));
        }
    }

    SUBCASE("uniform level shift keeps every graded depth") {
        ShiftIsomorphism iso;
        iso.phi = {0, 1, 2};
        iso.sigma.assign(3, Rat(5));
        for (int k = 0; k < 3; ++k)
            iso.Phi.push_back(NovMatrix::identity(c.pieces[k].dim(), c.group));
        FilteredComplex d = applyShiftIsomorphism(c, iso);
        for (int k = 0; k < 3; ++k)
            CHECK(boundaryDepthGraded(d, k) == boundaryDepthGraded(c, k));
    }

    SUBCASE("non-equivariant phi is rejected") {
        ShiftIsomorphism iso;
        iso.phi = {1, 0, 2};
        iso.sigma.assign(3, Rat(0));
        for (int k = 0; k < 3; ++k)
            iso.Phi.push_back(NovMatrix::identity(c.pieces[k].dim(), c.group));
        CHECK_THROWS_AS(applyShiftIsomorphism(c, iso), NotEquivariant);
    }

    SUBCASE("non-constant sigma is rejected") {
        ShiftIsomorphism iso;
        iso.phi = {0, 1, 2};
        iso.sigma = {Rat(0), Rat(1), Rat(0)};
        for (int k = 0; k < 3; ++k)
            iso.Phi.push_back(NovMatrix::identity(c.pieces[k].dim(), c.group));
        CHECK_THROWS_AS(applyShiftIsomorphism(c, iso), NotEquivariant);
    }

    SUBCASE("level-breaking Phi is rejected") {
        ShiftIsomorphism iso;
        iso.phi = {0, 1, 2};
        iso.sigma.assign(3, Rat(0));
        for (int k = 0; k < 3; ++k) {
            NovMatrix m = NovMatrix::identity(c.pieces[k].dim(), c.group);
            m.at(0, 0) = NovikovElement::monomial(Rat(1), Rat(3), c.group);
            iso.Phi.push_back(std::move(m));
        }
        CHECK_THROWS_AS(applyShiftIsomorphism(c, iso), NotFiltrationIso);
    }

    SUBCASE("random shift isomorphisms permute the graded depths") {
        for (int i = 0; i < 25; ++i) {
            FilteredComplex cc = randomSlackComplex(rng, 3, 3);
            ShiftIsomorphism iso = randomShiftIso(rng, cc);
            FilteredComplex d = applyShiftIsomorphism(cc, iso);
            for (int k = 0; k < cc.grading.size(); ++k)
                CHECK(boundaryDepthGraded(cc, k) ==
                      boundaryDepthGraded(d, iso.phi[k]));
            CHECK(boundaryDepth(cc) == boundaryDepth(d));
        }
    }
}

TEST_CASE("quasiequivalence audit") {
    Rng rng(33);
    FilteredComplex c = randomSlackComplex(rng, 2, 3);

    SUBCASE("identity pair at c = 0") {
        FilteredMap phi = identityMap(c, c, Rat(0));
        FilteredMap psi = identityMap(c, c, Rat(0));
        FilteredMap k1 = zeroHomotopy(c, c, Rat(0));
        FilteredMap k2 = zeroHomotopy(c, c, Rat(0));
        QuasiequivalenceReport rep =
            quasiequivalenceAudit(phi, psi, k1, k2, Rat(0), Rat(0), Rat(0));
        CHECK(rep.depthC == rep.depthD);
    }

    SUBCASE("level jitter within c/2 per side") {
        for (int i = 0; i < 25; ++i) {
            FilteredComplex base = randomSlackComplex(rng, 2, 3);
            Rat budget(1, 2);
            FilteredComplex d = jitterLevels(rng, base, budget / 2);
            FilteredMap phi = identityMap(base, d, budget / 2);
            FilteredMap psi = identityMap(d, base, budget / 2);
            FilteredMap k1 = zeroHomotopy(base, base, budget);
            FilteredMap k2 = zeroHomotopy(d, d, budget);
            QuasiequivalenceReport rep = quasiequivalenceAudit(
                phi, psi, k1, k2, budget / 2, budget / 2, budget);
            CHECK(abs(rep.depthC - rep.depthD) <= budget);
        }
    }

    SUBCASE("broken homotopy data is reported") {
        FilteredComplex d = c;
        for (auto& p : d.pieces)
            for (auto& n : p.names) n += "'";
        FilteredMap phi = identityMap(c, d, Rat(0));
        phi.blocks[0].at(0, 0) = NovikovElement::constant(Rat(2), c.group);
        FilteredMap psi = identityMap(d, c, Rat(0));
        FilteredMap k1 = zeroHomotopy(c, c, Rat(0));
        FilteredMap k2 = zeroHomotopy(d, d, Rat(0));
        bool threw = false;
        try {
            quasiequivalenceAudit(phi, psi, k1, k2, Rat(0), Rat(0), Rat(0));
        } catch (const HomotopyIdentityFails&) {
            threw = true;
        } catch (const InvariantViolation&) {
            threw = true;  // the chain-map identity may fail first
        }
        CHECK(threw);
    }

    SUBCASE("precondition c1 + c2 <= c") {
        FilteredMap phi = identityMap(c, c, Rat(1));
        FilteredMap psi = identityMap(c, c, Rat(1));
        FilteredMap k1 = zeroHomotopy(c, c, Rat(1));
        FilteredMap k2 = zeroHomotopy(c, c, Rat(1));
        CHECK_THROWS_AS(
            quasiequivalenceAudit(phi, psi, k1, k2, Rat(1), Rat(1), Rat(1)),
            UsageError);
    }
}
