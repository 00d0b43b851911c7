#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "nvk/generate.hpp"
#include "nvk/io.hpp"
#include "nvk/suite.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int resolution = 200;
    std::string out;
    std::optional<double> cutoff;
};

std::string seedHeader(const GlobalOpts& g) {
    std::ostringstream os;
    os << "# seed " << g.seed << "\n";
    return os.str();
}

void emitReport(const GlobalOpts& g, const std::string& name,
                const std::string& body) {
    std::cout << body;
    if (!g.out.empty())
        nvk::writeFile(g.out + "/" + name, seedHeader(g) + body);
}

nvk::ReduceOptions reduceOpts(const GlobalOpts& g) {
    nvk::ReduceOptions o;
    if (g.cutoff) o.cutoffOverride = nvk::parseRational(std::to_string(*g.cutoff));
    return o;
}

std::vector<nvk::Rat> parseRatList(const std::string& text) {
    std::vector<nvk::Rat> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(nvk::parseRational(tok));
    return out;
}

int runDepth(const GlobalOpts& g, const std::string& path, bool witness) {
    nvk::ParsedComplex pc = nvk::loadComplexFile(path);
    const nvk::FilteredComplex& c = pc.complex;
    std::ostringstream os;
    nvk::Rat total(0);
    std::vector<nvk::Rat> graded(c.grading.size(), nvk::Rat(0));
    for (int k = 0; k < c.grading.size(); ++k) {
        graded[k] = nvk::boundaryDepthGraded(c, k, reduceOpts(g));
        total = std::max(total, graded[k]);
    }
    os << "b " << nvk::ratStr(total) << "\n";
    for (int k = 0; k < c.grading.size(); ++k)
        os << "b_k " << c.grading.labels[k] << " " << nvk::ratStr(graded[k])
           << "\n";
    if (witness) {
        for (int k = 0; k < c.grading.size(); ++k) {
            const nvk::NovMatrix& A = c.diff[k];
            if (A.allEntriesZeroBelowCutoff()) continue;
            const auto& src = c.pieces[c.grading.succ[k]];
            const auto& tgt = c.pieces[k];
            nvk::DepthWitness w = nvk::depthWitness(A, src, tgt, reduceOpts(g));
            os << "witness " << c.grading.labels[k] << " gap "
               << nvk::ratStr(w.gap) << "\n";
            os << "witness " << c.grading.labels[k] << " boundary "
               << nvk::chainStr(w.boundary, tgt) << "\n";
            os << "witness " << c.grading.labels[k] << " primitive "
               << nvk::chainStr(w.primitive, src) << "\n";
        }
    }
    emitReport(g, "depth.txt", os.str());
    return 0;
}

int runMorse(const GlobalOpts& g, const std::string& data,
             const std::string& csv, const std::string& vList,
             const std::string& wList) {
    std::ostringstream os;
    if (!vList.empty() || !wList.empty()) {
        nvk::BumpProfile prof = nvk::BumpProfile::defaultProfile();
        nvk::EmbeddingReport rep = nvk::embeddingBounds(
            parseRatList(vList), parseRatList(wList), prof);
        os << "quantity,value\n";
        os << "sup_norm," << nvk::ratStr(rep.supNorm) << "\n";
        os << "osc," << nvk::ratStr(rep.oscSeq) << "\n";
        os << "neg_min_f_vw," << nvk::ratStr(rep.negMinFv) << "\n";
        os << "neg_min_f_wv," << nvk::ratStr(rep.negMinFw) << "\n";
        os << "mm_f," << nvk::ratStr(rep.mmF) << "\n";
        os << "sup_norm_matches," << (rep.supNormMatches ? 1 : 0) << "\n";
        os << "osc_matches," << (rep.oscMatches ? 1 : 0) << "\n";
        emitReport(g, "embedding.csv", os.str());
        if (!rep.supNormMatches || !rep.oscMatches)
            throw nvk::InvariantViolation("embedding identities failed");
        return 0;
    }
    nvk::Rat beta;
    nvk::CircleMorseData d;
    if (!data.empty()) {
        d = nvk::CircleMorseData::fromAlternating(parseRatList(data));
        beta = nvk::betaCombinatorial(d);
    } else if (!csv.empty()) {
        nvk::SampledCircleFunction f = nvk::loadCircleCsv(csv);
        beta = nvk::betaContinuous(f);
        os << "beta " << nvk::ratStr(beta) << "\n";
        emitReport(g, "morse.txt", os.str());
        return 0;
    } else {
        throw nvk::UsageError("morse: need --data or --csv or --v/--w");
    }
    nvk::Rat chain = nvk::betaChain(d, reduceOpts(g));
    os << "beta " << nvk::ratStr(beta) << "\n";
    os << "beta_chain " << nvk::ratStr(chain) << "\n";
    if (d.m() >= 2) {
        nvk::QuadrupleWitness qw = nvk::betaQuadruple(d);
        os << "quadruple p" << qw.i << " q" << qw.k << " p" << qw.j << " q"
           << qw.l << "\n";
    }
    emitReport(g, "morse.txt", os.str());
    if (beta != chain)
        throw nvk::InvariantViolation(
            "morse: combinatorial and chain-level depths disagree");
    return 0;
}

int runTensor(const GlobalOpts& g, const std::string& pathA,
              const std::string& pathB, const std::string& productOut) {
    nvk::ParsedComplex a = nvk::loadComplexFile(pathA);
    nvk::ParsedComplex b = nvk::loadComplexFile(pathB);
    if (a.parity.empty() || b.parity.empty())
        throw nvk::SignRuleUnavailable(
            "tensor: both factors need parity lines (Z_2 grading) for the "
            "sign rule; characteristic-two mode does not ship with rational "
            "coefficients");
    nvk::SignedComplex C{a.complex, a.parity};
    nvk::SignedComplex D{b.complex, b.parity};
    C.validate();
    D.validate();
    nvk::SignedComplex P = nvk::tensorComplex(C, D);
    nvk::ProductBoundReport rep = nvk::verifyProductBounds(C, D, reduceOpts(g));
    std::ostringstream os;
    os << "b_C " << nvk::ratStr(rep.depthC) << "\n";
    os << "b_D " << nvk::ratStr(rep.depthD) << "\n";
    os << "b_product " << nvk::ratStr(rep.depthProduct) << "\n";
    os << "dim_H_C " << rep.dimHC << "\n";
    os << "dim_H_D " << rep.dimHD << "\n";
    os << "bound_a " << (rep.boundA ? "holds" : "violated") << "\n";
    os << "bound_b_C " << (rep.boundB1 ? "holds" : "violated") << "\n";
    os << "bound_b_D " << (rep.boundB2 ? "holds" : "violated") << "\n";
    emitReport(g, "tensor.txt", os.str());
    if (!productOut.empty())
        nvk::saveComplexFile(P.complex, productOut, &P.parity);
    if (!rep.allHold())
        throw nvk::InvariantViolation("tensor: a product bound was violated");
    return 0;
}

int runQc(const GlobalOpts& g, const std::string& path) {
    nvk::QuantumCorrection q = nvk::loadQuantumFile(path);
    nvk::GapReport gap = nvk::validateGap(q);
    std::ostringstream os;
    for (int k = 0; k < q.deformed.grading.size(); ++k) {
        os << "tightest_gap " << q.deformed.grading.labels[k] << " "
           << gap.tightest[k].str() << "\n";
    }
    for (int k = 0; k < q.deformed.grading.size(); ++k) {
        auto [r0, r] = nvk::rankCompare(q, k, reduceOpts(g));
        nvk::Alternative alt = nvk::classify(q, k, reduceOpts(g));
        os << "grading " << q.deformed.grading.labels[k] << " alternative "
           << (alt.first ? "i" : "ii") << " b_k " << nvk::ratStr(alt.depthK)
           << " b_km1 " << nvk::ratStr(alt.depthKm1) << " dimH_Lambda "
           << alt.dimHLambda << " dimH_base " << alt.dimHBase << " rank_base "
           << r0 << " rank_deformed " << r << "\n";
    }
    emitReport(g, "qc.txt", os.str());
    return 0;
}

int runScan(const GlobalOpts& g, const std::string& path, double lo,
            double hi) {
    nvk::BlockOperatorFamily fam = nvk::loadFamilyFile(path);
    if (lo <= 0) lo = fam.etaZero() + 0.05;
    if (hi <= 0) hi = std::max(fam.etaOne() + 0.5, lo + 1.0);
    nvk::ScanResult sc =
        nvk::exceptionalSetScan(fam, lo, hi, g.resolution, 1e-6);
    std::ostringstream os;
    os << "eta,sigma_n,candidate\n";
    os.precision(17);
    for (const auto& p : sc.points)
        os << p.eta << "," << p.sigmaN << "," << (p.candidate ? 1 : 0) << "\n";
    for (double c : sc.candidates) os << "# candidate " << c << "\n";
    emitReport(g, "scan.csv", os.str());
    return 0;
}

int runSuite(const GlobalOpts& g, int scale) {
    nvk::SuiteOptions so;
    so.seed = g.seed;
    so.scale = scale;
    nvk::SuiteResult res = nvk::runSuite(so);
    emitReport(g, "suite.txt", res.report);
    return res.allPassed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary depth of R-filtered complexes over Novikov fields"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for randomized drivers")
        ->envname("NVK_SEED");
    app.add_option("--tolerance", g.tolerance, "numeric tolerance")
        ->envname("NVK_TOLERANCE");
    app.add_option("--resolution", g.resolution, "scan resolution")
        ->envname("NVK_RESOLUTION");
    app.add_option("--out", g.out, "output directory for artifacts")
        ->envname("NVK_OUT");
    double cutoffArg = 0;
    auto* cutoffOpt =
        app.add_option("--cutoff", cutoffArg, "working cutoff override")
            ->envname("NVK_CUTOFF");

    auto* depth = app.add_subcommand("depth", "boundary depth of a complex");
    std::string depthFile;
    bool noWitness = false;
    depth->add_option("file", depthFile)->required();
    depth->add_flag("--no-witness", noWitness);

    auto* morse = app.add_subcommand("morse", "circle Morse boundary depth");
    std::string morseData, morseCsv, vList, wList;
    morse->add_option("--data", morseData, "critical values p1,q1,p2,q2,...");
    morse->add_option("--csv", morseCsv, "sampled circle function CSV");
    morse->add_option("--v", vList, "embedding sequence v");
    morse->add_option("--w", wList, "embedding sequence w");

    auto* tensor = app.add_subcommand("tensor", "filtered tensor product");
    std::string tA, tB, tOut;
    tensor->add_option("a", tA)->required();
    tensor->add_option("b", tB)->required();
    tensor->add_option("--product-out", tOut, "write the product complex");

    auto* qc = app.add_subcommand("qc", "quantum-correction dichotomy");
    std::string qcFile;
    qc->add_option("file", qcFile)->required();

    auto* scan = app.add_subcommand("scan", "exceptional-set scan");
    std::string scanFile;
    double etaLo = 0, etaHi = 0;
    scan->add_option("file", scanFile)->required();
    scan->add_option("--eta-min", etaLo);
    scan->add_option("--eta-max", etaHi);

    auto* suite = app.add_subcommand("suite", "seeded randomized property run");
    int scale = 1;
    suite->add_option("--scale", scale, "instance count multiplier");

    try {
        app.parse(argc, argv);
        if (cutoffOpt->count()) g.cutoff = cutoffArg;
        if (depth->parsed()) return runDepth(g, depthFile, !noWitness);
        if (morse->parsed()) return runMorse(g, morseData, morseCsv, vList, wList);
        if (tensor->parsed()) return runTensor(g, tA, tB, tOut);
        if (qc->parsed()) return runQc(g, qcFile);
        if (scan->parsed()) return runScan(g, scanFile, etaLo, etaHi);
        if (suite->parsed()) return runSuite(g, scale);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const nvk::ParseError& e) {
        json rec{{"error", "ParseError"}, {"detail", e.what()}};
        std::cerr << rec.dump() << "\n";
        return 2;
    } catch (const nvk::UsageError& e) {
        json rec{{"error", "UsageError"}, {"detail", e.what()}};
        std::cerr << rec.dump() << "\n";
        return 2;
    } catch (const nvk::Error& e) {
        json rec{{"error", "InvariantFailure"}, {"detail", e.what()}};
        std::cerr << rec.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json rec{{"error", "Internal"}, {"detail", e.what()}};
        std::cerr << rec.dump() << "\n";
        return 1;
    }
}
