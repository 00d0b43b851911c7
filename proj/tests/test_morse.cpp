#include <doctest.h>

#include "nvk/generate.hpp"
#include "nvk/morse.hpp"

using namespace nvk;

namespace {

std::vector<Rat> rats(std::initializer_list<long> v) {
    std::vector<Rat> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("morse complex structure") {
    SUBCASE("m = 1 has vanishing differential") {
        CircleMorseData d = CircleMorseData::fromAlternating(rats({3, 0}));
        FilteredComplex c = morseComplex(d);
        CHECK(c.diff[0].isZeroMatrix());
        CHECK(betaChain(d) == 0);
        CHECK(betaCombinatorial(d) == 0);
    }
    SUBCASE("m = 2 differential and kernel/image structure") {
        CircleMorseData d =
            CircleMorseData::fromAlternating(rats({3, 0, 2, 1}));
        FilteredComplex c = morseComplex(d);
        const NovMatrix& A = c.diff[0];
        // d p1 = q1 - q2, d p2 = q2 - q1
        CHECK(A.at(0, 0).identicalTo(NovikovElement::one(c.group)));
        CHECK(A.at(1, 0).identicalTo(NovikovElement::constant(Rat(-1), c.group)));
        CHECK(A.at(1, 1).identicalTo(NovikovElement::one(c.group)));
        CHECK(A.at(0, 1).identicalTo(NovikovElement::constant(Rat(-1), c.group)));
        // ker = span(p1 + p2): apply to (1, 1)
        Chain k(2, NovikovElement::one(c.group));
        CHECK(chainIsZero(A.apply(k)));
        // image = {n1 q1 + n2 q2 : n1 + n2 = 0}: columns sum to zero
        for (int j = 0; j < 2; ++j) {
            Rat s = A.at(0, j).coeffAt(Rat(0)) + A.at(1, j).coeffAt(Rat(0));
            CHECK(s == 0);
        }
    }
    SUBCASE("data validation") {
        CHECK_THROWS_AS(CircleMorseData::fromAlternating(rats({1, 2})),
                        InvariantViolation);
        CHECK_THROWS_AS(CircleMorseData::fromAlternating(rats({1, 0, 1})),
                        InvariantViolation);
        // normalization rotates the global max to the front
        CircleMorseData d =
            CircleMorseData::fromAlternating(rats({2, 1, 3, 0}));
        CHECK(d.maxima[0] == 3);
        CHECK(d.minima[0] == 0);
        CHECK(d.maxima[1] == 2);
        CHECK(d.minima[1] == 1);
    }
}

TEST_CASE("combinatorial formula") {
    SUBCASE("m = 2 example evaluates to 1") {
        CircleMorseData d =
            CircleMorseData::fromAlternating(rats({3, 0, 2, 1}));
        CHECK(betaCombinatorial(d) == 1);
        CHECK(betaCombinatorialQuartic(d) == 1);
        QuadrupleWitness w = betaQuadruple(d);
        CHECK(w.value == 1);
    }
    SUBCASE("periodic pattern attains osc") {
        for (int m = 2; m <= 6; ++m) {
            std::vector<Rat> vals;
            for (int i = 0; i < m; ++i) {
                vals.emplace_back(1);
                vals.emplace_back(-1);
            }
            CircleMorseData d = CircleMorseData::fromAlternating(vals);
            CHECK(betaCombinatorial(d) == 2);
            CHECK(d.osc() == 2);
        }
    }
    SUBCASE("chain route equals combinatorial route on random data") {
        Rng rng(4242);
        for (int i = 0; i < 300; ++i) {
            CircleMorseData d = randomCircleMorseData(rng, 10, -20, 20);
            Rat a = betaChain(d);
            Rat b = betaCombinatorial(d);
            CHECK(a == b);
            if (d.m() >= 2) CHECK(b == betaCombinatorialQuartic(d));
            CHECK(b >= 0);
            CHECK(b <= d.osc());
        }
    }
}

TEST_CASE("sampled circle functions") {
    SUBCASE("constant function has beta 0") {
        SampledCircleFunction f;
        f.samples.assign(8, Rat(5));
        CHECK(betaContinuous(f) == 0);
    }
    SUBCASE("interpolated m = 2 data recovers the exact value") {
        // samples tracing 3, 0, 2, 1 with linear ramps between
        SampledCircleFunction f;
        std::vector<long> trace{3, 2, 1, 0, 1, 2, 1, 1, 2, 1};
        for (long v : trace) f.samples.emplace_back(v);
        CHECK(betaContinuous(f) == 1);
    }
    SUBCASE("beta is 2-Lipschitz in the sup norm") {
        Rng rng(314159);
        for (int i = 0; i < 200; ++i) {
            int n = static_cast<int>(rng.intIn(4, 16));
            SampledCircleFunction f, g;
            Rat eps(0);
            for (int j = 0; j < n; ++j) {
                Rat a = rng.ratIn(-10, 10);
                Rat delta = Rat(rng.intIn(-8, 8), 4);
                delta.canonicalize();
                f.samples.push_back(a);
                g.samples.push_back(a + delta);
                eps = std::max(eps, Rat(abs(delta)));
            }
            Rat bf = betaContinuous(f);
            Rat bg = betaContinuous(g);
            CHECK(abs(bf - bg) <= 2 * eps);
        }
    }
}

TEST_CASE("mm of sampled functions") {
    BumpProfile g = BumpProfile::defaultProfile();
    SUBCASE("single bump: mm = 0") {
        SampledLineFunction f = stackedBumps({Rat(1)}, g, 1);
        CHECK(mmLine(f) == 0);
        CHECK(minValue(f) == 0);
    }
    SUBCASE("negative bump: mm = 0 and mm - min = 1") {
        SampledLineFunction f = stackedBumps({Rat(-1)}, g, 1);
        CHECK(mmLine(f) == 0);
        CHECK(minValue(f) == -1);
    }
    SUBCASE("constant zero") {
        SampledLineFunction f = stackedBumps({}, g, 1);
        CHECK(mmLine(f) == 0);
    }
    SUBCASE("interior negative plateau is a local maximum") {
        SampledLineFunction f;
        for (int i = 0; i <= 8; ++i) {
            f.positions.emplace_back(i);
            f.values.emplace_back(0);
        }
        // dip to -2 with a ledge at -1 in the middle
        f.values[2] = Rat(-2);
        f.values[3] = Rat(-1);
        f.values[4] = Rat(-1);
        f.values[5] = Rat(-2);
        CHECK(mmLine(f) == -1);
    }
    SUBCASE("circle variant has no zero extension") {
        SampledCircleFunction f;
        f.samples = {Rat(2), Rat(3), Rat(2), Rat(1)};
        CHECK(mmCircle(f) == 3);
    }
}

TEST_CASE("stacked bumps") {
    BumpProfile g = BumpProfile::defaultProfile();
    SUBCASE("zero sequence gives the zero function") {
        SampledLineFunction f = stackedBumps({}, g, 3);
        for (const auto& v : f.values) CHECK(v == 0);
    }
    SUBCASE("e1 is one bump of height 1 on [0, 1/2]") {
        SampledLineFunction f = stackedBumps({Rat(1)}, g, 2);
        Rat mx(0);
        for (size_t i = 0; i < f.positions.size(); ++i) {
            mx = std::max(mx, f.values[i]);
            if (f.positions[i] > Rat(1, 2)) CHECK(f.values[i] == 0);
        }
        CHECK(mx == 1);
    }
    SUBCASE("additivity on the shared grid") {
        Rng rng(777);
        for (int i = 0; i < 50; ++i) {
            std::vector<Rat> v = randomSparseSequence(rng, 4, -5, 5);
            std::vector<Rat> w = randomSparseSequence(rng, 4, -5, 5);
            std::vector<Rat> sum(std::max(v.size(), w.size()), Rat(0));
            for (size_t j = 0; j < sum.size(); ++j) {
                if (j < v.size()) sum[j] += v[j];
                if (j < w.size()) sum[j] += w[j];
            }
            int blocks = std::max<int>(1, static_cast<int>(sum.size()));
            SampledLineFunction fv = stackedBumps(v, g, blocks);
            SampledLineFunction fw = stackedBumps(w, g, blocks);
            SampledLineFunction fs = stackedBumps(sum, g, blocks);
            REQUIRE(fv.positions == fw.positions);
            REQUIRE(fv.positions == fs.positions);
            for (size_t j = 0; j < fs.values.size(); ++j)
                CHECK(fs.values[j] == fv.values[j] + fw.values[j]);
        }
    }
}

TEST_CASE("embedding bounds") {
    BumpProfile g = BumpProfile::defaultProfile();
    SUBCASE("v = w gives all zeros") {
        EmbeddingReport rep =
            embeddingBounds({Rat(1), Rat(2)}, {Rat(1), Rat(2)}, g);
        CHECK(rep.supNorm == 0);
        CHECK(rep.oscSeq == 0);
        CHECK(rep.supNormMatches);
        CHECK(rep.oscMatches);
    }
    SUBCASE("one-sided v = e1") {
        EmbeddingReport rep = embeddingBounds({Rat(1)}, {}, g);
        CHECK(rep.supNorm == 1);
        CHECK(rep.oscSeq == 1);
        CHECK(rep.supNormMatches);
        CHECK(rep.oscMatches);
    }
    SUBCASE("v = (2, -3)") {
        EmbeddingReport rep = embeddingBounds({Rat(2), Rat(-3)}, {}, g);
        CHECK(rep.supNorm == 3);
        CHECK(rep.oscSeq == 5);
        CHECK(rep.negMinFv == 3);
        CHECK(rep.negMinFw == 2);
        CHECK(rep.mmF == 0);
        CHECK(rep.supNormMatches);
        CHECK(rep.oscMatches);
    }
    SUBCASE("random sequences satisfy both identities exactly") {
        Rng rng(112233);
        for (int i = 0; i < 150; ++i) {
            std::vector<Rat> v = randomSparseSequence(rng, 6, -9, 9);
            std::vector<Rat> w = randomSparseSequence(rng, 6, -9, 9);
            EmbeddingReport rep = embeddingBounds(v, w, g);
            CHECK(rep.supNormMatches);
            CHECK(rep.oscMatches);
            CHECK(rep.mmF <= 0);
        }
    }
}
