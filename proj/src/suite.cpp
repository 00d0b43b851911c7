#include "nvk/suite.hpp"

#include <functional>
#include <sstream>

#include "nvk/generate.hpp"
#include "nvk/io.hpp"

namespace nvk {

namespace {

struct Family {
    std::string name;
    int instances;
    std::function<void(Rng&)> run;  // throws on failure
};

NovikovElement randomElement(Rng& rng, const ExponentGroup& g, bool nonzero) {
    std::vector<NovikovElement::Term> terms;
    int count = static_cast<int>(rng.intIn(nonzero ? 1 : 0, 3));
    for (int t = 0; t < count; ++t) {
        Rat c = rng.ratIn(-4, 4);
        if (c == 0) c = 1;
        terms.push_back({Rat(rng.intIn(-5, 5)), c});
    }
    NovikovElement e = NovikovElement::fromTerms(std::move(terms), g);
    if (nonzero && !e.hasTerms()) e = NovikovElement::one(g);
    return e;
}

void expect(bool ok, const std::string& msg) {
    if (!ok) throw Error("property failed: " + msg);
}

}  // namespace

SuiteResult runSuite(const SuiteOptions& opts) {
    std::ostringstream out;
    out << "novikov-depth suite v1\n";
    out << "seed " << opts.seed << "\n";
    out << "scale " << opts.scale << "\n";

    ExponentGroup Z = ExponentGroup::integers();

    std::vector<Family> families;

    families.push_back(
        {"novikov-valuation-laws", 300 * opts.scale, [&](Rng& rng) {
             NovikovElement x = randomElement(rng, Z, true);
             NovikovElement y = randomElement(rng, Z, true);
             expect((x * y).valuation() == x.valuation() + y.valuation(),
                    "nu(xy) = nu(x) + nu(y)");
             NovikovElement s = x + y;
             if (s.hasTerms())
                 expect(!(s.valuation() <
                          minExt(x.valuation(), y.valuation())),
                        "nu(x+y) >= min");
             if (x.valuation() != y.valuation())
                 expect(s.valuation() == minExt(x.valuation(), y.valuation()),
                        "nu(x+y) equality case");
             NovikovElement inv = x.inverse(Extended(Rat(20)));
             expect(inv.valuation() == -x.valuation(), "nu(1/x) = -nu(x)");
             NovikovElement prod = x * inv;
             expect(prod.agreesBelow(NovikovElement::one(Z),
                                     minExt(prod.cutoff(), Extended(Rat(10)))),
                    "x * 1/x = 1 below cutoff");
         }});

    families.push_back(
        {"morse-chain-vs-combinatorial", 120 * opts.scale, [&](Rng& rng) {
             CircleMorseData d = randomCircleMorseData(rng, 8, -20, 20);
             Rat a = betaChain(d);
             Rat b = betaCombinatorial(d);
             expect(a == b, "beta_chain = beta_combinatorial");
             if (d.m() >= 2)
                 expect(b == betaCombinatorialQuartic(d),
                        "quadratic refinement = quartic enumeration");
             expect(b >= 0 && b <= d.osc(), "0 <= beta <= osc");
         }});

    families.push_back(
        {"morse-periodic-osc", 40 * opts.scale, [&](Rng& rng) {
             int m = static_cast<int>(rng.intIn(2, 6));
             CircleMorseData d = randomPeriodicMorseData(rng, m, -20, 20);
             expect(betaCombinatorial(d) == d.osc(),
                    "periodic pattern attains osc");
         }});

    families.push_back(
        {"reduction-extension-invariance", 40 * opts.scale, [&](Rng& rng) {
             StepInstance ins = randomStepInstance(rng, 3, 10);
             FilteredComplex c = makeTwoTermComplex(ins.src, ins.tgt, ins.A);
             Rat b = boundaryDepthGraded(c, 0);
             FilteredComplex e =
                 extendCoefficients(c, ExponentGroup::cyclic(Rat(1, 2)));
             FilteredComplex e2 =
                 extendCoefficients(e, ExponentGroup::cyclic(Rat(1, 4)));
             expect(boundaryDepthGraded(e, 0) == b,
                    "depth invariant under Z -> Z/2");
             expect(boundaryDepthGraded(e2, 0) == b,
                    "depth invariant under Z/2 -> Z/4");
             if (!ins.A.allEntriesZeroBelowCutoff()) {
                 DepthWitness w = depthWitness(ins.A, ins.src, ins.tgt);
                 expect(w.gap == b, "witness gap = graded depth");
             }
         }});

    families.push_back(
        {"shift-isomorphism-invariance", 30 * opts.scale, [&](Rng& rng) {
             FilteredComplex c = randomSlackComplex(rng, 3, 3);
             ShiftIsomorphism iso = randomShiftIso(rng, c);
             FilteredComplex d = applyShiftIsomorphism(c, iso);
             for (int k = 0; k < c.grading.size(); ++k)
                 expect(boundaryDepthGraded(c, k) ==
                            boundaryDepthGraded(d, iso.phi[k]),
                        "graded depths permute along phi");
         }});

    families.push_back(
        {"quasiequivalence-bound", 30 * opts.scale, [&](Rng& rng) {
             FilteredComplex c = randomSlackComplex(rng, 2, 3);
             Rat budget(1, 2);
             FilteredComplex d = jitterLevels(rng, c, budget / 2);
             FilteredMap phi = identityMap(c, d, budget / 2);
             FilteredMap psi = identityMap(d, c, budget / 2);
             FilteredMap k1 = zeroHomotopy(c, c, budget);
             FilteredMap k2 = zeroHomotopy(d, d, budget);
             QuasiequivalenceReport rep = quasiequivalenceAudit(
                 phi, psi, k1, k2, budget / 2, budget / 2, budget);
             expect(rep.bound(), "|b(C) - b(D)| <= c");
         }});

    families.push_back(
        {"tensor-product-bounds", 25 * opts.scale, [&](Rng& rng) {
             SignedComplex c = randomSignedComplex(rng, 4, 4);
             SignedComplex d = randomSignedComplex(rng, 4, 4);
             ProductBoundReport rep = verifyProductBounds(c, d);
             expect(rep.boundA, "b(CxD) >= min(b(C), b(D))");
             expect(rep.boundB1, "H(D) != 0 => b(CxD) >= b(C)");
             expect(rep.boundB2, "H(C) != 0 => b(CxD) >= b(D)");
         }});

    families.push_back(
        {"quantum-dichotomy", 40 * opts.scale, [&](Rng& rng) {
             QuantumCorrection q = randomQuantumCorrection(rng, 2, 4);
             for (int k = 0; k < q.deformed.grading.size(); ++k) {
                 auto [r0, r] = rankCompare(q, k);
                 expect(r0 <= r, "base rank <= deformed rank");
                 Alternative alt = classify(q, k);
                 if (r0 < r)
                     expect(alt.depthK >= q.gap[k] || !alt.first,
                            "strict rank gap forces depth >= mu");
             }
         }});

    families.push_back(
        {"embedding-arithmetic", 60 * opts.scale, [&](Rng& rng) {
             BumpProfile g = BumpProfile::defaultProfile();
             std::vector<Rat> v = randomSparseSequence(rng, 5, -6, 6);
             std::vector<Rat> w = randomSparseSequence(rng, 5, -6, 6);
             EmbeddingReport rep = embeddingBounds(v, w, g);
             expect(rep.supNormMatches,
                    "max(-min f_{v-w}, -min f_{w-v}) = sup norm");
             expect(rep.oscMatches, "osc f_{v-w} = osc(v-w)");
             expect(rep.mmF <= 0, "mm f <= 0");
         }});

    families.push_back(
        {"spectral-signature-grid", 6 * opts.scale, [&](Rng& rng) {
             int n = static_cast<int>(rng.intIn(1, 3));
             Mat b1(n, n), b2(n, n);
             for (int i = 0; i < n; ++i)
                 for (int j = 0; j < n; ++j) {
                     b1(i, j) = rng.uniform(-1, 1);
                     b2(i, j) = rng.uniform(-1, 1);
                 }
             b1 = ((b1 + b1.transpose()) / 2).eval();
             b2 = ((b2 + b2.transpose()) / 2).eval();
             Eigen::SelfAdjointEigenSolver<Mat> e1(b1, Eigen::EigenvaluesOnly);
             Eigen::SelfAdjointEigenSolver<Mat> e2(b2, Eigen::EigenvaluesOnly);
             double nb = std::max(std::abs(e1.eigenvalues()(0)),
                                  std::abs(e1.eigenvalues()(n - 1))) +
                         std::max(std::abs(e2.eigenvalues()(0)),
                                  std::abs(e2.eigenvalues()(n - 1)));
             for (int t = 0; t < 20; ++t) {
                 double mu = (nb == 0 ? 1.0 : 1.0 / nb) * 0.99 *
                             (2.0 * t / 19 - 1.0);
                 SignatureCount sc = signatureCount(b1, b2, mu);
                 expect(sc.positive == n && sc.negative == n,
                        "signature (n, n)");
                 expect(sc.minAbsEigenvalue >= 1 - std::abs(mu) * nb - 1e-9,
                        "eigenvalue bound");
                 SplitOperator so = spectralProjections(b1, b2, mu);
                 expect((so.projPlus * so.projPlus - so.projPlus).norm() <=
                            1e-10,
                        "projection idempotent");
                 expect((so.projPlus + so.projMinus -
                         Mat::Identity(2 * n, 2 * n))
                                .norm() <= 1e-12,
                        "projection completeness");
             }
         }});

    families.push_back(
        {"integrator-vs-picard", 3 * opts.scale, [&](Rng& rng) {
             int n = static_cast<int>(rng.intIn(1, 2));
             std::vector<double> s{-1.0, -0.25, 0.5, 1.0};
             std::vector<Mat> b1, b2;
             for (size_t i = 0; i < s.size(); ++i) {
                 Mat m1(n, n), m2(n, n);
                 for (int a = 0; a < n; ++a)
                     for (int b = 0; b < n; ++b) {
                         m1(a, b) = rng.uniform(-0.8, 0.8);
                         m2(a, b) = rng.uniform(-0.8, 0.8);
                     }
                 b1.push_back(((m1 + m1.transpose()) / 2).eval());
                 b2.push_back(((m2 + m2.transpose()) / 2).eval());
             }
             // constant tails
             b1.back() = b1[b1.size() - 2];
             b2.back() = b2[b2.size() - 2];
             BlockOperatorFamily fam(s, b1, b2, 1.0);
             double eta = rng.uniform(0.3, 0.8);
             IntegratorResult ir = fundamentalSolution(fam, eta, 2048);
             PicardResult pr = picardFundamentalSolution(fam, eta, 30, 64);
             expect((ir.phiT - pr.phiT).norm() <= 1e-8,
                    "integrator agrees with Picard series");
         }});

    families.push_back(
        {"constant-family-scan-empty", 3 * opts.scale, [&](Rng& rng) {
             int n = static_cast<int>(rng.intIn(1, 2));
             Mat m1(n, n), m2(n, n);
             for (int a = 0; a < n; ++a)
                 for (int b = 0; b < n; ++b) {
                     m1(a, b) = rng.uniform(-0.5, 0.5);
                     m2(a, b) = rng.uniform(-0.5, 0.5);
                 }
             m1 = ((m1 + m1.transpose()) / 2).eval();
             m2 = ((m2 + m2.transpose()) / 2).eval();
             BlockOperatorFamily fam =
                 BlockOperatorFamily::constant(m1, m2, 1.0);
             double lo = fam.etaZero() + 0.1;
             ScanResult sc = exceptionalSetScan(fam, lo, lo + 1.5, 40, 1e-6,
                                                1024);
             expect(sc.candidates.empty(), "constant family has no crossings");
             for (const auto& p : sc.points)
                 expect(p.sigmaN > 1e-3, "singular value stays large");
         }});

    auto fnv = [](const std::string& s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
        return h;
    };
    SuiteResult res;
    for (auto& fam : families) {
        Rng rng(opts.seed ^ fnv(fam.name));
        bool ok = true;
        std::string detail;
        try {
            for (int i = 0; i < fam.instances; ++i) fam.run(rng);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        ++res.familiesRun;
        if (ok) ++res.familiesPassed;
        out << (ok ? "[PASS] " : "[FAIL] ") << fam.name << " "
            << fam.instances << " instances";
        if (!ok) out << " (" << detail << ")";
        out << "\n";
    }
    out << "summary " << res.familiesPassed << "/" << res.familiesRun
        << " families passed\n";
    res.report = out.str();
    return res;
}

}  // namespace nvk
