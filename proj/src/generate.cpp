#include "nvk/generate.hpp"

namespace nvk {

namespace {

NovikovElement randomEntry(Rng& rng, const ExponentGroup& g, long long loExp,
                           long long hiExp, int maxTerms) {
    std::vector<NovikovElement::Term> terms;
    int count = static_cast<int>(rng.intIn(1, maxTerms));
    for (int t = 0; t < count; ++t) {
        Rat c = rng.ratIn(-3, 3);
        if (c == 0) continue;
        terms.push_back({Rat(rng.intIn(loExp, hiExp)), c});
    }
    return NovikovElement::fromTerms(std::move(terms), g);
}

}  // namespace

StepInstance randomStepInstance(Rng& rng, int maxDimPerSide, long long maxExp) {
    StepInstance ins;
    ExponentGroup g = ExponentGroup::integers();
    int sd = static_cast<int>(rng.intIn(1, maxDimPerSide));
    int td = static_cast<int>(rng.intIn(1, maxDimPerSide));
    ins.src.group = g;
    ins.tgt.group = g;
    for (int j = 0; j < sd; ++j) {
        ins.src.names.push_back("y" + std::to_string(j + 1));
        ins.src.levels.push_back(rng.ratIn(-3, 3));
    }
    for (int i = 0; i < td; ++i) {
        ins.tgt.names.push_back("x" + std::to_string(i + 1));
        ins.tgt.levels.push_back(rng.ratIn(-3, 3));
    }
    ins.A = NovMatrix(td, sd, g);
    for (int i = 0; i < td; ++i)
        for (int j = 0; j < sd; ++j) {
            if (!rng.chance(0.7)) continue;
            long long lb = mpz_get_si(
                Rat(ins.tgt.levels[i] - ins.src.levels[j]).get_num().get_mpz_t());
            long long hi = std::min(maxExp, lb + 6);
            if (lb > hi) continue;
            ins.A.at(i, j) = randomEntry(rng, g, lb, hi, 2);
        }
    return ins;
}

CircleMorseData randomCircleMorseData(Rng& rng, int maxM, long long lo,
                                      long long hi) {
    int m = static_cast<int>(rng.intIn(1, maxM));
    std::vector<Rat> q(m), p(m);
    for (int i = 0; i < m; ++i) q[i] = rng.ratIn(lo, hi - 2);
    for (int i = 0; i < m; ++i) {
        Rat adj = std::max(q[(i + m - 1) % m], q[i]);
        long long floorAdj = mpz_get_si(adj.get_num().get_mpz_t());
        p[i] = rng.ratIn(floorAdj + 1, hi);
    }
    std::vector<Rat> interleaved;
    for (int i = 0; i < m; ++i) {
        interleaved.push_back(p[i]);
        interleaved.push_back(q[i]);
    }
    return CircleMorseData::fromAlternating(interleaved);
}

CircleMorseData randomPeriodicMorseData(Rng& rng, int m, long long lo,
                                        long long hi) {
    Rat q = rng.ratIn(lo, hi - 1);
    long long fq = mpz_get_si(q.get_num().get_mpz_t());
    Rat p = rng.ratIn(fq + 1, hi);
    std::vector<Rat> interleaved;
    for (int i = 0; i < m; ++i) {
        interleaved.push_back(p);
        interleaved.push_back(q);
    }
    return CircleMorseData::fromAlternating(interleaved);
}

namespace {

// Unipotent matrix I + N with N strictly upper triangular, entries restricted
// to positions where `allowed` holds; exact polynomial inverse.
NovMatrix randomUnipotent(Rng& rng, int d, const ExponentGroup& g,
                          const std::function<bool(int, int)>& allowed) {
    NovMatrix N(d, d, g);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (!allowed(i, j) || !rng.chance(0.4)) continue;
            Rat c = rng.ratIn(-2, 2);
            if (c == 0) continue;
            N.at(i, j) = NovikovElement::monomial(
                c, Rat(rng.intIn(0, 3)) * (g.isTrivial() ? Rat(0) : g.generator()),
                g);
        }
    NovMatrix G = NovMatrix::identity(d, g);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (N.at(i, j).hasTerms()) G.at(i, j) = N.at(i, j);
    return G;
}

NovMatrix unipotentInverse(const NovMatrix& G) {
    // G = I + N nilpotent: inverse = I - N + N^2 - ...
    const int d = G.rows();
    NovMatrix N(d, d, G.group());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) N.at(i, j) = G.at(i, j);
    NovMatrix inv = NovMatrix::identity(d, G.group());
    NovMatrix pw = NovMatrix::identity(d, G.group());
    for (int k = 1; k < d; ++k) {
        pw = pw.times(N);
        bool sign = k % 2 == 1;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (!pw.at(i, j).hasTerms()) continue;
                inv.at(i, j) = sign ? inv.at(i, j) - pw.at(i, j)
                                    : inv.at(i, j) + pw.at(i, j);
            }
    }
    return inv;
}

}  // namespace

SignedComplex randomSignedComplex(Rng& rng, int maxDim, long long maxGapExp) {
    ExponentGroup g = ExponentGroup::integers();
    int d = static_cast<int>(rng.intIn(1, maxDim));
    std::vector<int> parity(d);
    for (auto& p : parity) p = static_cast<int>(rng.intIn(0, 1));

    // random pairing differential between opposite parities
    NovMatrix dcan(d, d, g);
    std::vector<int> zeros, ones;
    for (int i = 0; i < d; ++i) (parity[i] == 0 ? zeros : ones).push_back(i);
    int pairs = static_cast<int>(
        rng.intIn(0, std::min(zeros.size(), ones.size())));
    for (int t = 0; t < pairs; ++t) {
        int src = ones[t], tgt = zeros[t];
        if (rng.chance(0.5)) std::swap(src, tgt);
        dcan.at(tgt, src) = NovikovElement::monomial(
            Rat(rng.intIn(1, 2)), Rat(rng.intIn(0, maxGapExp)), g);
    }

    NovMatrix G = randomUnipotent(
        rng, d, g, [&](int i, int j) { return parity[i] == parity[j]; });
    NovMatrix diff = G.times(dcan).times(unipotentInverse(G));

    // carry to random levels in the group: A = D diff D^{-1}
    FilteredVectorSpace sp;
    sp.group = g;
    std::vector<Rat> lv(d);
    for (int i = 0; i < d; ++i) {
        lv[i] = rng.ratIn(-3, 3);
        sp.names.push_back("e" + std::to_string(i + 1));
        sp.levels.push_back(lv[i]);
    }
    NovMatrix A(d, d, g);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!diff.at(i, j).hasTerms()) continue;
            A.at(i, j) = diff.at(i, j).shifted(lv[i] - lv[j]);
        }
    return SignedComplex::make(std::move(sp), std::move(A), std::move(parity));
}

QuantumCorrection randomQuantumCorrection(Rng& rng, int gradings,
                                          int maxDimPerGrading) {
    ExponentGroup g = ExponentGroup::integers();
    std::vector<std::string> labels;
    for (int k = 0; k < gradings; ++k)
        labels.push_back("k" + std::to_string(k));
    QuantumCorrection q;
    q.deformed.grading = GradingSet::cycle(labels);
    q.deformed.group = g;

    std::vector<int> dims(gradings);
    int total = 0;
    std::vector<int> offset(gradings);
    for (int k = 0; k < gradings; ++k) {
        dims[k] = static_cast<int>(rng.intIn(1, maxDimPerGrading));
        offset[k] = total;
        total += dims[k];
    }
    // pairing differential on the whole space: generator j in grading succ(k)
    // may map to generator i in grading k; each generator used at most once
    NovMatrix dcan(total, total, g);
    std::vector<bool> usedSrc(total, false), usedTgt(total, false);
    for (int k = 0; k < gradings; ++k) {
        int sk = q.deformed.grading.succ[k];
        if (sk == k) continue;  // no self-block pairing in cyclic grading
        for (int j = 0; j < dims[sk]; ++j) {
            if (usedSrc[offset[sk] + j] || usedTgt[offset[sk] + j]) continue;
            if (!rng.chance(0.55)) continue;
            std::vector<int> free;
            for (int i = 0; i < dims[k]; ++i)
                if (!usedTgt[offset[k] + i] && !usedSrc[offset[k] + i])
                    free.push_back(i);
            if (free.empty()) continue;
            int i = free[rng.below(free.size())];
            // exponent 0 keeps base rank; positive exponent is a deformation
            long e = rng.chance(0.5) ? 0 : rng.intIn(1, 3);
            dcan.at(offset[k] + i, offset[sk] + j) =
                NovikovElement::monomial(Rat(rng.intIn(1, 2)), Rat(e), g);
            usedTgt[offset[k] + i] = true;
            usedSrc[offset[sk] + j] = true;
        }
    }
    NovMatrix G = randomUnipotent(rng, total, g, [&](int i, int j) {
        // grading-preserving
        auto gradeOf = [&](int idx) {
            for (int k = 0; k < gradings; ++k)
                if (idx >= offset[k] && idx < offset[k] + dims[k]) return k;
            return -1;
        };
        return gradeOf(i) == gradeOf(j);
    });
    NovMatrix big = G.times(dcan).times(unipotentInverse(G));

    q.deformed.pieces.assign(gradings, FilteredVectorSpace{});
    for (int k = 0; k < gradings; ++k) {
        q.deformed.pieces[k].group = g;
        for (int j = 0; j < dims[k]; ++j) {
            q.deformed.pieces[k].names.push_back(
                "g" + std::to_string(k) + "_" + std::to_string(j + 1));
            q.deformed.pieces[k].levels.push_back(Rat(0));
        }
    }
    q.deformed.diff.clear();
    q.base.resize(gradings);
    q.gap.assign(gradings, Rat(1));
    for (int k = 0; k < gradings; ++k) {
        int sk = q.deformed.grading.succ[k];
        NovMatrix blk(dims[k], dims[sk], g);
        q.base[k].assign(size_t(dims[k]) * dims[sk], Rat(0));
        Extended tight = Extended::posInf();
        for (int i = 0; i < dims[k]; ++i)
            for (int j = 0; j < dims[sk]; ++j) {
                const NovikovElement& e = big.at(offset[k] + i, offset[sk] + j);
                if (!e.hasTerms()) continue;
                blk.at(i, j) = e;
                q.base[k][size_t(i) * dims[sk] + j] = e.coeffAt(Rat(0));
                NovikovElement dev = e - NovikovElement::constant(
                                             e.coeffAt(Rat(0)), g);
                if (dev.hasTerms()) tight = minExt(tight, dev.valuation());
            }
        q.deformed.diff.push_back(std::move(blk));
        if (tight.isFinite()) q.gap[k] = tight.value();
    }
    q.validate();
    requireValidGap(q);
    return q;
}

FilteredComplex randomSlackComplex(Rng& rng, int gradings, int maxDim) {
    ExponentGroup g = ExponentGroup::integers();
    std::vector<std::string> labels;
    for (int k = 0; k < gradings; ++k)
        labels.push_back("k" + std::to_string(k));
    FilteredComplex c;
    c.grading = GradingSet::cycle(labels);
    c.group = g;

    std::vector<int> dims(gradings), offset(gradings);
    int total = 0;
    for (int k = 0; k < gradings; ++k) {
        dims[k] = static_cast<int>(rng.intIn(1, maxDim));
        offset[k] = total;
        total += dims[k];
    }
    NovMatrix dcan(total, total, g);
    std::vector<bool> used(total, false);
    for (int k = 0; k < gradings; ++k) {
        int sk = c.grading.succ[k];
        if (sk == k) continue;
        for (int j = 0; j < dims[sk]; ++j) {
            if (used[offset[sk] + j] || !rng.chance(0.5)) continue;
            std::vector<int> free;
            for (int i = 0; i < dims[k]; ++i)
                if (!used[offset[k] + i]) free.push_back(i);
            if (free.empty()) continue;
            int i = free[rng.below(free.size())];
            dcan.at(offset[k] + i, offset[sk] + j) = NovikovElement::monomial(
                Rat(rng.intIn(1, 2)), Rat(rng.intIn(0, 4)), g);
            used[offset[k] + i] = true;
            used[offset[sk] + j] = true;
        }
    }
    NovMatrix G = randomUnipotent(rng, total, g, [&](int i, int j) {
        auto gradeOf = [&](int idx) {
            for (int k = 0; k < gradings; ++k)
                if (idx >= offset[k] && idx < offset[k] + dims[k]) return k;
            return -1;
        };
        return gradeOf(i) == gradeOf(j);
    });
    NovMatrix big = G.times(dcan).times(unipotentInverse(G));

    // levels with margin: nu(entry) >= ell_i - ell_j + 1 via the carrying
    // trick with an extra shift of +1 on every pairing exponent
    c.pieces.assign(gradings, FilteredVectorSpace{});
    std::vector<Rat> lv(total);
    for (int k = 0; k < gradings; ++k) {
        c.pieces[k].group = g;
        for (int j = 0; j < dims[k]; ++j) {
            lv[offset[k] + j] = rng.ratIn(-2, 2);
            c.pieces[k].names.push_back("c" + std::to_string(k) + "_" +
                                        std::to_string(j + 1));
            c.pieces[k].levels.push_back(lv[offset[k] + j]);
        }
    }
    c.diff.clear();
    for (int k = 0; k < gradings; ++k) {
        int sk = c.grading.succ[k];
        NovMatrix blk(dims[k], dims[sk], g);
        for (int i = 0; i < dims[k]; ++i)
            for (int j = 0; j < dims[sk]; ++j) {
                const NovikovElement& e = big.at(offset[k] + i, offset[sk] + j);
                if (!e.hasTerms()) continue;
                // shift by level difference + 1 for slack
                blk.at(i, j) =
                    e.shifted(lv[offset[k] + i] - lv[offset[sk] + j] + 1);
            }
        c.diff.push_back(std::move(blk));
    }
    c.validate();
    return c;
}

ShiftIsomorphism randomShiftIso(Rng& rng, const FilteredComplex& C) {
    const int L = C.grading.size();
    ShiftIsomorphism iso;
    int rot = static_cast<int>(rng.intIn(0, L - 1));
    iso.phi.resize(L);
    for (int k = 0; k < L; ++k) iso.phi[k] = (k + rot) % L;
    Rat sigma = Rat(rng.intIn(-6, 6), 2);
    sigma.canonicalize();
    iso.sigma.assign(L, sigma);
    for (int k = 0; k < L; ++k) {
        const FilteredVectorSpace& sp = C.pieces[k];
        const int d = sp.dim();
        NovMatrix phi(d, d, C.group);
        for (int i = 0; i < d; ++i) {
            Rat c = rng.ratIn(1, 3);
            if (rng.chance(0.5)) c = -c;
            // diagonal unit: c * (1 + e T^s), s >= 1
            std::vector<NovikovElement::Term> terms{{Rat(0), c}};
            if (rng.chance(0.5))
                terms.push_back({Rat(rng.intIn(1, 3)), rng.ratIn(-2, 2)});
            phi.at(i, i) = NovikovElement::fromTerms(terms, C.group);
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j || !rng.chance(0.3)) continue;
                Rat c = rng.ratIn(-2, 2);
                if (c == 0) continue;
                // nu >= ell_i - ell_j + 1 keeps diagonal dominance
                Rat lb = sp.levels[i] - sp.levels[j] + 1;
                mpz_class ceilLb;
                mpz_cdiv_q(ceilLb.get_mpz_t(), lb.get_num().get_mpz_t(),
                           lb.get_den().get_mpz_t());
                long t = mpz_get_si(ceilLb.get_mpz_t()) + rng.intIn(0, 2);
                phi.at(i, j) = NovikovElement::monomial(c, Rat(t), C.group);
            }
        iso.Phi.push_back(std::move(phi));
    }
    return iso;
}

FilteredComplex jitterLevels(Rng& rng, const FilteredComplex& C,
                             const Rat& budget) {
    FilteredComplex D = C;
    for (auto& p : D.pieces)
        for (auto& l : p.levels) {
            Rat eps = budget * Rat(rng.intIn(-4, 4), 4);
            eps.canonicalize();
            l += eps;
        }
    for (auto& p : D.pieces)
        for (auto& n : p.names) n += "~";
    D.validate();
    return D;
}

FilteredMap identityMap(const FilteredComplex& C, const FilteredComplex& D,
                        const Rat& shift) {
    FilteredMap m;
    m.source = &C;
    m.target = &D;
    m.shift = shift;
    m.degree = 0;
    for (int k = 0; k < C.grading.size(); ++k)
        m.blocks.push_back(NovMatrix::identity(C.pieces[k].dim(), C.group));
    return m;
}

FilteredMap zeroHomotopy(const FilteredComplex& C, const FilteredComplex& D,
                         const Rat& shift) {
    FilteredMap m;
    m.source = &C;
    m.target = &D;
    m.shift = shift;
    m.degree = 1;
    for (int k = 0; k < C.grading.size(); ++k)
        m.blocks.push_back(
            NovMatrix(D.pieces[C.grading.succ[k]].dim(), C.pieces[k].dim(),
                      C.group));
    return m;
}

std::vector<Rat> randomSparseSequence(Rng& rng, int maxLen, long long lo,
                                      long long hi) {
    int len = static_cast<int>(rng.intIn(0, maxLen));
    std::vector<Rat> v(len, Rat(0));
    for (auto& x : v)
        if (rng.chance(0.7)) x = rng.ratIn(lo, hi);
    return v;
}

}  // namespace nvk
