#include "nvk/morse.hpp"

#include <algorithm>

namespace nvk {

Rat CircleMorseData::osc() const {
    Rat mx = maxima[0], mn = minima[0];
    for (const auto& p : maxima) mx = std::max(mx, p);
    for (const auto& q : minima) mn = std::min(mn, q);
    return mx - mn;
}

void CircleMorseData::validate() const {
    if (maxima.empty() || maxima.size() != minima.size())
        throw InvariantViolation("CircleMorseData: need m >= 1 with maxima "
                                 "and minima alternating");
    const int n = m();
    for (int i = 0; i < n; ++i) {
        // p_i > q_i and p_{i+1} > q_i cyclically
        if (!(maxima[i] > minima[i]) || !(maxima[(i + 1) % n] > minima[i]))
            throw InvariantViolation(
                "CircleMorseData: local maximum does not exceed an adjacent "
                "minimum (index " + std::to_string(i + 1) + ")");
    }
    for (int i = 1; i < n; ++i)
        if (maxima[i] > maxima[0])
            throw InvariantViolation(
                "CircleMorseData: p1 is not a global maximum");
}

CircleMorseData CircleMorseData::fromAlternating(
    const std::vector<Rat>& values) {
    if (values.size() < 2 || values.size() % 2 != 0)
        throw InvariantViolation(
            "CircleMorseData: need an even number of values (p1, q1, ...)");
    const int n = static_cast<int>(values.size() / 2);
    // rotate so that the first maximum is a global maximum
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (values[2 * i] > values[2 * best]) best = i;
    CircleMorseData d;
    for (int i = 0; i < n; ++i) {
        d.maxima.push_back(values[2 * ((best + i) % n)]);
        d.minima.push_back(values[2 * ((best + i) % n) + 1]);
    }
    d.validate();
    return d;
}

void SampledCircleFunction::validate() const {
    if (samples.size() < 4)
        throw InvariantViolation("SampledCircleFunction: need N >= 4");
}

void BumpProfile::validate() const {
    if (samples.size() < 3)
        throw InvariantViolation("BumpProfile: need at least 3 samples");
    if (samples.front() != 0 || samples.back() != 0)
        throw InvariantViolation(
            "BumpProfile: support must be interior to (0,1)");
    Rat mx(0);
    for (const auto& s : samples) mx = std::max(mx, s);
    if (mx != 1) throw InvariantViolation("BumpProfile: max must be 1");
    for (const auto& s : samples)
        if (s < 0)
            throw InvariantViolation("BumpProfile: negative sample");
    // non-strict local minima must sit at value 0
    const int n = static_cast<int>(samples.size());
    for (int i = 1; i + 1 < n; ++i) {
        if (samples[i] == 0) continue;
        // interior local minimum of the piecewise-linear interpolation: both
        // neighbors (skipping plateau) weakly above
        int l = i;
        while (l > 0 && samples[l - 1] == samples[i]) --l;
        int r = i;
        while (r + 1 < n && samples[r + 1] == samples[i]) ++r;
        bool leftUp = l == 0 || samples[l - 1] > samples[i];
        bool rightUp = r + 1 == n || samples[r + 1] > samples[i];
        if (leftUp && rightUp)
            throw InvariantViolation(
                "BumpProfile: local minimum with nonzero value at sample " +
                std::to_string(i));
    }
}

BumpProfile BumpProfile::defaultProfile() {
    BumpProfile g;
    g.samples = {Rat(0), Rat(1, 2), Rat(1), Rat(1, 2), Rat(0)};
    g.validate();
    return g;
}

FilteredComplex morseComplex(const CircleMorseData& d) {
    d.validate();
    const int n = d.m();
    ExponentGroup triv;
    FilteredVectorSpace bottom, top;
    bottom.group = triv;
    top.group = triv;
    for (int i = 0; i < n; ++i) {
        top.names.push_back("p" + std::to_string(i + 1));
        top.levels.push_back(d.maxima[i]);
        bottom.names.push_back("q" + std::to_string(i + 1));
        bottom.levels.push_back(d.minima[i]);
    }
    NovMatrix diff(n, n, triv);
    if (n > 1) {
        for (int i = 0; i < n; ++i) {
            // d p_i = q_i - q_{i-1}
            diff.at(i, i) = NovikovElement::one(triv);
            int prev = (i + n - 1) % n;
            diff.at(prev, i) =
                diff.at(prev, i) + NovikovElement::constant(Rat(-1), triv);
        }
    }
    return makeTwoTermComplex(top, bottom, diff);
}

namespace {

// arcMin[i][j]: minimum of q over k in the cyclic arc {i, ..., j-1}; the full
// circle when i == j is not used.
std::vector<std::vector<Rat>> arcMinima(const std::vector<Rat>& q) {
    const int n = static_cast<int>(q.size());
    std::vector<std::vector<Rat>> mn(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        Rat cur = q[i];
        for (int len = 1; len <= n; ++len) {
            int j = (i + len) % n;
            mn[i][j] = cur;
            cur = std::min(cur, q[j % n]);
        }
    }
    return mn;
}

}  // namespace

Rat betaCombinatorial(const CircleMorseData& d) {
    d.validate();
    if (d.m() == 1) return Rat(0);
    QuadrupleWitness w = betaQuadruple(d);
    return w.value;
}

QuadrupleWitness betaQuadruple(const CircleMorseData& d) {
    const int n = d.m();
    if (n < 2)
        throw UsageError("betaQuadruple: quadruples need m >= 2");
    auto mn = arcMinima(d.minima);
    bool have = false;
    QuadrupleWitness best{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            // q_k ranges over arc {i, ..., j-1}, q_l over {j, ..., i-1}
            Rat score = std::min(d.maxima[i], d.maxima[j]) -
                        std::max(mn[i][j], mn[j][i]);
            if (!have || score > best.value) {
                have = true;
                best.value = score;
                // recover witness indices
                best.i = i + 1;
                best.j = j + 1;
                Rat m1 = mn[i][j];
                int k = i;
                while (d.minima[k] != m1) k = (k + 1) % n;
                best.k = k + 1;
                Rat m2 = mn[j][i];
                int l = j;
                while (d.minima[l] != m2) l = (l + 1) % n;
                best.l = l + 1;
            }
        }
    return best;
}

Rat betaCombinatorialQuartic(const CircleMorseData& d) {
    d.validate();
    const int n = d.m();
    if (n == 1) return Rat(0);
    bool have = false;
    Rat best;
    // positions: p_i at 2i, q_i at 2i+1 (0-based). (p_i, q_k, p_j, q_l) in
    // cyclic order iff, walking from p_i, we meet q_k, then p_j, then q_l.
    auto cyc = [&](int a, int b) { return ((b - a) % (2 * n) + 2 * n) % (2 * n); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    int pi = 2 * i, qk = 2 * k + 1, pj = 2 * j, ql = 2 * l + 1;
                    if (!(cyc(pi, qk) < cyc(pi, pj) &&
                          cyc(pi, pj) < cyc(pi, ql)))
                        continue;
                    Rat score = std::min(d.maxima[i], d.maxima[j]) -
                                std::max(d.minima[k], d.minima[l]);
                    if (!have || score > best) {
                        have = true;
                        best = score;
                    }
                }
        }
    return best;
}

Rat betaChain(const CircleMorseData& d, const ReduceOptions& opts) {
    return boundaryDepth(morseComplex(d), opts);
}

CircleMorseData extractAlternatingExtrema(const SampledCircleFunction& f) {
    f.validate();
    // collapse cyclic plateaus to runs of distinct values
    std::vector<Rat> runs;
    for (const auto& v : f.samples)
        if (runs.empty() || runs.back() != v) runs.push_back(v);
    while (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();
    const int n = static_cast<int>(runs.size());
    if (n <= 1)
        throw UsageError("extractAlternatingExtrema: constant function has "
                         "no alternating extrema");
    std::vector<Rat> alt;  // interleaved p, q starting from a maximum
    std::vector<int> kind;  // +1 max, -1 min, in cyclic run order
    std::vector<Rat> vals;
    for (int i = 0; i < n; ++i) {
        const Rat& prev = runs[(i + n - 1) % n];
        const Rat& next = runs[(i + 1) % n];
        if (runs[i] > prev && runs[i] > next) {
            kind.push_back(1);
            vals.push_back(runs[i]);
        } else if (runs[i] < prev && runs[i] < next) {
            kind.push_back(-1);
            vals.push_back(runs[i]);
        }
    }
    if (vals.empty())
        throw UsageError("extractAlternatingExtrema: no extrema found");
    // rotate to start at a maximum; extrema alternate by construction
    int start = 0;
    while (kind[start] != 1) ++start;
    std::vector<Rat> interleaved;
    const int e = static_cast<int>(vals.size());
    for (int i = 0; i < e; ++i) interleaved.push_back(vals[(start + i) % e]);
    return CircleMorseData::fromAlternating(interleaved);
}

Rat betaContinuous(const SampledCircleFunction& f) {
    f.validate();
    bool constant = true;
    for (const auto& v : f.samples)
        if (v != f.samples.front()) {
            constant = false;
            break;
        }
    if (constant) return Rat(0);
    CircleMorseData d = extractAlternatingExtrema(f);
    if (d.m() == 1) return Rat(0);
    Rat b = betaCombinatorial(d);
    return std::max(b, Rat(0));
}

void SampledLineFunction::validate() const {
    if (positions.size() != values.size())
        throw InvariantViolation("SampledLineFunction: size mismatch");
    for (size_t i = 1; i < positions.size(); ++i)
        if (!(positions[i - 1] < positions[i]))
            throw InvariantViolation(
                "SampledLineFunction: positions must increase strictly");
}

namespace {

// Non-strict local maxima of a sequence; boundary indices compare against an
// implicit zero extension when `zeroExtended`, else only inward.
std::vector<int> localMaxIndices(const std::vector<Rat>& v, bool cyclic,
                                 bool zeroExtended) {
    const int n = static_cast<int>(v.size());
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        // skip to plateau representative (first index of each plateau)
        if (i > 0 && v[i] == v[i - 1]) continue;
        int r = i;
        while (r + 1 < n && v[r + 1] == v[i]) ++r;
        bool leftOk, rightOk;
        if (cyclic) {
            const Rat& lv = v[(i + n - 1) % n];
            const Rat& rv = v[(r + 1) % n];
            leftOk = lv <= v[i];
            rightOk = rv <= v[i];
            // full-circle plateau
            if (r - i + 1 == n) leftOk = rightOk = true;
        } else {
            leftOk = i == 0 ? (!zeroExtended || v[i] >= 0) : v[i - 1] <= v[i];
            rightOk =
                r == n - 1 ? (!zeroExtended || v[i] >= 0) : v[r + 1] <= v[i];
        }
        if (leftOk && rightOk) out.push_back(i);
    }
    return out;
}

}  // namespace

Rat mmCircle(const SampledCircleFunction& f) {
    f.validate();
    auto idx = localMaxIndices(f.samples, true, false);
    Rat best = f.samples[idx.front()];
    for (int i : idx) best = std::min(best, f.samples[i]);
    return best;
}

Rat mmLine(const SampledLineFunction& f) {
    f.validate();
    // zero tails are plateaus of non-strict local maxima, so mm <= 0 always
    Rat best(0);
    auto idx = localMaxIndices(f.values, false, true);
    for (int i : idx) best = std::min(best, f.values[i]);
    return best;
}

Rat minValue(const SampledLineFunction& f) {
    Rat mn(0);  // zero off the window
    for (const auto& v : f.values) mn = std::min(mn, v);
    return mn;
}

Rat oscValue(const SampledLineFunction& f) {
    Rat mn(0), mx(0);
    for (const auto& v : f.values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return mx - mn;
}

SampledLineFunction stackedBumps(const std::vector<Rat>& v,
                                 const BumpProfile& g, int blockCount) {
    g.validate();
    if (blockCount < 1)
        throw UsageError("stackedBumps: need at least one block");
    SampledLineFunction f;
    const int gs = static_cast<int>(g.samples.size());
    // block i (1-based) occupies [1 - 2^{1-i}, 1 - 2^{-i}]
    Rat left(0);
    for (int i = 1; i <= blockCount; ++i) {
        Rat width = Rat(1, mpz_class(1) << i);  // 2^{-i}
        Rat vi = (i - 1) < static_cast<int>(v.size()) ? v[i - 1] : Rat(0);
        // sample points left + width * t_j, t_j = j/(gs-1); skip the last
        // point except for the final block (it is the next block's first)
        for (int j = 0; j < gs; ++j) {
            if (j == gs - 1 && i < blockCount) break;
            Rat t(j, gs - 1);
            t.canonicalize();
            f.positions.push_back(left + width * t);
            f.values.push_back(vi * g.samples[j]);
        }
        left += width;
    }
    f.validate();
    return f;
}

EmbeddingReport embeddingBounds(const std::vector<Rat>& v,
                                const std::vector<Rat>& w,
                                const BumpProfile& g) {
    size_t n = std::max(v.size(), w.size());
    std::vector<Rat> diff(n, Rat(0)), ndiff(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Rat a = i < v.size() ? v[i] : Rat(0);
        Rat b = i < w.size() ? w[i] : Rat(0);
        diff[i] = a - b;
        ndiff[i] = b - a;
    }
    EmbeddingReport rep;
    rep.supNorm = Rat(0);
    Rat mx(0), mn(0);
    for (const auto& x : diff) {
        rep.supNorm = std::max(rep.supNorm, Rat(abs(x)));
        mx = std::max(mx, x);
        mn = std::min(mn, x);
    }
    rep.oscSeq = mx - mn;
    int blocks = std::max<int>(1, static_cast<int>(n));
    SampledLineFunction fv = stackedBumps(diff, g, blocks);
    SampledLineFunction fw = stackedBumps(ndiff, g, blocks);
    rep.negMinFv = -minValue(fv);
    rep.negMinFw = -minValue(fw);
    rep.mmF = mmLine(fv);
    rep.supNormMatches = std::max(rep.negMinFv, rep.negMinFw) == rep.supNorm;
    rep.oscMatches = oscValue(fv) == rep.oscSeq;
    return rep;
}

}  // namespace nvk
