#include <doctest.h>

#include "nvk/generate.hpp"
#include "nvk/tensor.hpp"
#include "oracles.hpp"

using namespace nvk;

namespace {

// Single pair d w = T^a x, parity |w| = 1, |x| = 0, levels zero.
SignedComplex pairComplex(const Rat& a, const std::string& suffix) {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace sp{{"w" + suffix, "x" + suffix}, {Rat(0), Rat(0)}, Z};
    NovMatrix d(2, 2, Z);
    d.at(1, 0) = NovikovElement::monomial(Rat(1), a, Z);
    return SignedComplex::make(sp, d, {1, 0});
}

SignedComplex cycleComplex(const std::string& name, int parity) {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace sp{{name}, {Rat(0)}, Z};
    return SignedComplex::make(sp, NovMatrix(1, 1, Z), {parity});
}

}  // namespace

TEST_CASE("tensor levels are additive") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace C{{"x1"}, {Rat(3)}, Z};
    FilteredVectorSpace D{{"y1", "y2"}, {Rat(0), Rat(1)}, Z};
    FilteredVectorSpace P = tensorLevels(C, D);
    REQUIRE(P.dim() == 2);
    CHECK(P.levels[0] == 3);
    CHECK(P.levels[1] == 4);
    CHECK(P.names[0] == "x1⊗y1");

    // ell of T^2 x1 (x) y1 with zero levels: -2
    FilteredVectorSpace C0{{"x1"}, {Rat(0)}, Z};
    FilteredVectorSpace D0{{"y1"}, {Rat(0)}, Z};
    FilteredVectorSpace P0 = tensorLevels(C0, D0);
    Chain c = zeroChain(P0);
    c[0] = NovikovElement::monomial(Rat(1), Rat(2), Z);
    CHECK(chainLevel(c, P0) == Extended(Rat(-2)));

    FilteredVectorSpace Dother{{"z"}, {Rat(0)},
                               ExponentGroup::cyclic(Rat(1, 2))};
    CHECK_THROWS_AS(tensorLevels(C, Dother), GroupMismatch);
}

TEST_CASE("sign rule and d squared") {
    SignedComplex C = pairComplex(Rat(2), "c");
    SignedComplex D = pairComplex(Rat(3), "d");
    SignedComplex P = tensorComplex(C, D);
    P.validate();  // includes d^2 = 0 and parity flip

    // d(w_c (x) w_d) = (d w_c) (x) w_d - w_c (x) (d w_d)  since |w_c| = 1
    const NovMatrix& dP = P.differential();
    // basis order: w_c(x)w_d, w_c(x)x_d, x_c(x)w_d, x_c(x)x_d
    CHECK(dP.at(2, 0).identicalTo(
        NovikovElement::monomial(Rat(1), Rat(2), P.space().group)));
    CHECK(dP.at(1, 0).identicalTo(
        NovikovElement::monomial(Rat(-1), Rat(3), P.space().group)));
}

TEST_CASE("degenerate factor: C with zero differential") {
    SignedComplex C = cycleComplex("h", 0);
    SignedComplex D = pairComplex(Rat(3), "d");
    ProductBoundReport rep = verifyProductBounds(C, D);
    CHECK(rep.depthC == 0);
    CHECK(rep.depthD == 3);
    CHECK(rep.depthProduct == 3);
    CHECK(rep.allHold());
}

TEST_CASE("two single pairs: product depth is the smaller gap") {
    SignedComplex C = pairComplex(Rat(2), "c");
    SignedComplex D = pairComplex(Rat(3), "d");
    ProductBoundReport rep = verifyProductBounds(C, D);
    CHECK(rep.depthC == 2);
    CHECK(rep.depthD == 3);
    CHECK(rep.dimHC == 0);
    CHECK(rep.dimHD == 0);
    CHECK(rep.depthProduct == 2);
    CHECK(rep.allHold());

    // exhaustive certification on the 4-generator product
    SignedComplex P = tensorComplex(C, D);
    oracle::certifyStep(P.differential(), P.space(), P.space());
}

TEST_CASE("pair times cycle keeps the pair's gap") {
    SignedComplex C = pairComplex(Rat(5), "c");
    SignedComplex D = cycleComplex("h", 0);
    ProductBoundReport rep = verifyProductBounds(C, D);
    CHECK(rep.depthProduct == 5);
    CHECK(rep.dimHD == 1);
    CHECK(rep.boundB1);
}

TEST_CASE("basis independence of the product level") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace C{{"x1", "x2"}, {Rat(0), Rat(0)}, Z};
    FilteredVectorSpace D{{"y1", "y2"}, {Rat(1), Rat(0)}, Z};

    SUBCASE("identity alternative bases") {
        auto rep = checkBasisIndependence(C, D, {}, {}, 25, 5);
        CHECK(rep.allEqual);
    }
    SUBCASE("triangular alternative basis on C") {
        Chain w1 = basisChain(C, 0);
        w1[1] = NovikovElement::monomial(Rat(1), Rat(1), Z);  // x1 + T x2
        Chain w2 = basisChain(C, 1);
        auto rep = checkBasisIndependence(C, D, {w1, w2}, {}, 50, 7);
        CHECK(rep.allEqual);
        CHECK(rep.probes == 50);
    }
    SUBCASE("non-orthogonal alternative basis is rejected") {
        Chain w1 = basisChain(C, 0);
        Chain w2 = basisChain(C, 0);
        w2[1] = NovikovElement::monomial(Rat(1), Rat(1), Z);  // x1 + T x2
        CHECK_THROWS_AS(checkBasisIndependence(C, D, {w1, w2}, {}, 10, 1),
                        NotOrthogonal);
    }
    SUBCASE("dependent alternative basis is rejected") {
        Chain w1 = basisChain(C, 0);
        Chain w2 = scaleChain(w1, NovikovElement::monomial(Rat(2), Rat(1), Z));
        CHECK_THROWS_AS(checkBasisIndependence(C, D, {w1, w2}, {}, 10, 1),
                        NotIndependent);
    }
}

TEST_CASE("characteristic-two mode does not ship over the rationals") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace sp{{"e"}, {Rat(0)}, Z};
    // a missing parity assignment on either side blocks the sign rule
    SignedComplex C = cycleComplex("h", 0);
    FilteredComplex raw;
    raw.grading = GradingSet::single();
    raw.group = Z;
    raw.pieces = {sp};
    raw.diff = {NovMatrix(1, 1, Z)};
    SignedComplex D{raw, {}};
    CHECK_THROWS_AS(D.validate(), InvariantViolation);
}

TEST_CASE("random products satisfy the depth bounds") {
    Rng rng(987654);
    for (int i = 0; i < 60; ++i) {
        SignedComplex C = randomSignedComplex(rng, 5, 4);
        SignedComplex D = randomSignedComplex(rng, 5, 4);
        ProductBoundReport rep = verifyProductBounds(C, D);
        CHECK(rep.boundA);
        CHECK(rep.boundB1);
        CHECK(rep.boundB2);
    }
}

TEST_CASE("kernel of the product differential is orthogonal to the F-blocks") {
    Rng rng(55221);
    int tested = 0;
    for (int iter = 0; iter < 40 && tested < 12; ++iter) {
        SignedComplex C = randomSignedComplex(rng, 4, 3);
        SignedComplex D = randomSignedComplex(rng, 4, 3);
        SignedComplex P = tensorComplex(C, D);
        if (P.differential().allEntriesZeroBelowCutoff()) continue;

        ReductionCertificate certC =
            reduce(C.differential(), C.space(), C.space());
        ReductionCertificate certD =
            reduce(D.differential(), D.space(), D.space());
        ReductionCertificate certP =
            reduce(P.differential(), P.space(), P.space());
        if (certC.pairs.empty() || certD.pairs.empty()) continue;
        ++tested;

        const ExponentGroup ext = certP.certGroup.joinedWith(certC.certGroup)
                                      .joinedWith(certD.certGroup);
        FilteredVectorSpace PExt = P.space().overGroup(ext);
        auto lift = [&](const Chain& c) {
            Chain r(c.size(), NovikovElement::zero(ext));
            for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].overGroup(ext);
            return r;
        };
        auto tensorChain = [&](const Chain& a, const Chain& b) {
            const int n = D.space().dim();
            Chain r(size_t(C.space().dim()) * n, NovikovElement::zero(ext));
            for (int i = 0; i < C.space().dim(); ++i)
                for (int j = 0; j < n; ++j)
                    r[size_t(i) * n + j] =
                        a[i].overGroup(ext) * b[j].overGroup(ext);
            return r;
        };

        // homology representatives: kernel completions whose join with the
        // boundary basis stays orthogonal (the orthonormal extension of an
        // image basis inside the kernel)
        auto hSample = [&](const ReductionCertificate& cert,
                           const SignedComplex& S) -> std::optional<Chain> {
            std::vector<Chain> fam;
            for (const auto& p : cert.pairs) fam.push_back(p.boundary);
            FilteredVectorSpace ext2 = S.space().overGroup(cert.certGroup);
            for (const auto& u : cert.unpairedSource) {
                std::vector<Chain> trial = fam;
                trial.push_back(u);
                OrthogonalityReport rep = checkOrthogonality(trial, ext2);
                if (rep.orthogonal) return u;
            }
            return std::nullopt;
        };

        // one sample from each subspace: ker d(x), F(x)F, F(x)H, H(x)F
        Chain ker = lift(certP.pairs.front().boundary);
        Chain ff = tensorChain(certC.pairs.front().primitive,
                               certD.pairs.front().primitive);
        std::vector<Chain> parts{ker, ff};
        if (auto h = hSample(certD, D))
            parts.push_back(
                tensorChain(certC.pairs.front().primitive, *h));
        if (auto h = hSample(certC, C))
            parts.push_back(
                tensorChain(*h, certD.pairs.front().primitive));

        Chain sum = zeroChain(PExt);
        Extended expect = Extended::negInf();
        for (const auto& part : parts) {
            sum = addChains(sum, part);
            expect = maxExt(expect, chainLevel(part, PExt));
        }
        CHECK(chainLevel(sum, PExt) == expect);
    }
    CHECK(tested > 0);
}
