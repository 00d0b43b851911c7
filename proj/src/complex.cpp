#include "nvk/complex.hpp"

#include <set>
#include <sstream>

namespace nvk {

int GradingSet::indexOf(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

int GradingSet::pred(int k) const {
    for (size_t i = 0; i < succ.size(); ++i)
        if (succ[i] == k) return static_cast<int>(i);
    throw Error("GradingSet: successor is not surjective");
}

void GradingSet::validate() const {
    if (labels.empty()) throw InvariantViolation("GradingSet: empty");
    std::set<std::string> names(labels.begin(), labels.end());
    if (names.size() != labels.size())
        throw InvariantViolation("GradingSet: duplicate labels");
    if (succ.size() != labels.size())
        throw InvariantViolation("GradingSet: successor size mismatch");
    std::vector<bool> hit(labels.size(), false);
    for (int s : succ) {
        if (s < 0 || s >= size())
            throw InvariantViolation("GradingSet: successor out of range");
        if (hit[s])
            throw InvariantViolation("GradingSet: successor not a bijection");
        hit[s] = true;
    }
}

GradingSet GradingSet::cycle(const std::vector<std::string>& labels) {
    GradingSet g;
    g.labels = labels;
    int n = g.size();
    g.succ.resize(n);
    for (int i = 0; i < n; ++i) g.succ[i] = (i + 1) % n;
    g.validate();
    return g;
}

GradingSet GradingSet::single(const std::string& label) {
    return cycle({label});
}

int FilteredComplex::totalDim() const {
    int d = 0;
    for (const auto& p : pieces) d += p.dim();
    return d;
}

bool FilteredComplex::generatorNamesUnique() const {
    std::set<std::string> seen;
    for (const auto& p : pieces)
        for (const auto& n : p.names)
            if (!seen.insert(n).second) return false;
    return true;
}

void FilteredComplex::validate() const {
    grading.validate();
    if (static_cast<int>(pieces.size()) != grading.size() ||
        static_cast<int>(diff.size()) != grading.size())
        throw InvariantViolation("FilteredComplex: piece/diff count mismatch");
    if (!generatorNamesUnique())
        throw InvariantViolation("FilteredComplex: duplicate generator names");
    for (const auto& p : pieces)
        if (p.group != group)
            throw InvariantViolation("FilteredComplex: piece group mismatch");

    for (int k = 0; k < grading.size(); ++k) {
        const FilteredVectorSpace& tgt = pieces[k];
        const FilteredVectorSpace& src = pieces[grading.succ[k]];
        const NovMatrix& d = diff[k];
        if (d.rows() != tgt.dim() || d.cols() != src.dim())
            throw InvariantViolation("FilteredComplex: differential block " +
                                     grading.labels[k] + " has wrong shape");
        if (d.group() != group)
            throw InvariantViolation(
                "FilteredComplex: differential group mismatch");
        // Level condition entrywise: nu(d_ij) >= ell(target_i) - ell(src_j).
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) {
                const NovikovElement& e = d.at(i, j);
                Extended need(tgt.levels[i] - src.levels[j]);
                if (e.hasTerms() && e.valuation() < need) {
                    std::ostringstream os;
                    os << "FilteredComplex: level increases along the "
                          "differential: entry ("
                       << tgt.names[i] << ", " << src.names[j]
                       << ") has valuation " << e.valuation().str()
                       << " < " << need.str();
                    throw InvariantViolation(os.str());
                }
                if (e.isTruncatedEmpty() && e.cutoff() < need)
                    throw InvariantViolation(
                        "FilteredComplex: truncated differential entry cannot "
                        "certify the level condition");
            }
    }
    // d^2 = 0: for each k, diff[k] * diff[succ(k)] vanishes below cutoff.
    for (int k = 0; k < grading.size(); ++k) {
        NovMatrix sq = diff[k].times(diff[grading.succ[k]]);
        if (!sq.allEntriesZeroBelowCutoff()) {
            for (int i = 0; i < sq.rows(); ++i)
                for (int j = 0; j < sq.cols(); ++j)
                    if (sq.at(i, j).hasTerms())
                        throw InvariantViolation(
                            "FilteredComplex: d^2 != 0 at (" +
                            pieces[k].names[i] + ", " +
                            pieces[grading.succ[grading.succ[k]]].names[j] +
                            "): " + sq.at(i, j).str());
        }
    }
}

void FilteredMap::validate(bool requireChainMap) const {
    if (!source || !target) throw Error("FilteredMap: missing endpoints");
    const GradingSet& g = source->grading;
    if (target->grading.labels != g.labels || target->grading.succ != g.succ)
        throw InvariantViolation("FilteredMap: grading sets differ");
    if (static_cast<int>(blocks.size()) != g.size())
        throw InvariantViolation("FilteredMap: block count mismatch");
    for (int k = 0; k < g.size(); ++k) {
        int tk = degree == 0 ? k : g.succ[k];
        const FilteredVectorSpace& src = source->pieces[k];
        const FilteredVectorSpace& tgt = target->pieces[tk];
        if (blocks[k].rows() != tgt.dim() || blocks[k].cols() != src.dim())
            throw InvariantViolation("FilteredMap: block " + g.labels[k] +
                                     " has wrong shape");
        for (int j = 0; j < src.dim(); ++j) {
            Chain img = blocks[k].column(j);
            Extended lvl = chainLevel(img, tgt);
            if (lvl > Extended(src.levels[j] + shift))
                throw ShiftExceeded("FilteredMap: image of generator " +
                                    src.names[j] + " has level " + lvl.str() +
                                    " > " + ratStr(src.levels[j] + shift));
        }
    }
    if (degree == 0 && requireChainMap) {
        for (int k = 0; k < g.size(); ++k) {
            // On piece succ(k): Phi_k d_C[k] = d_D[k] Phi_{succ(k)}.
            NovMatrix lhs = blocks[k].times(source->diff[k]);
            NovMatrix rhs = target->diff[k].times(blocks[g.succ[k]]);
            for (int i = 0; i < lhs.rows(); ++i)
                for (int j = 0; j < lhs.cols(); ++j) {
                    NovikovElement d = lhs.at(i, j) - rhs.at(i, j);
                    if (d.hasTerms())
                        throw InvariantViolation(
                            "FilteredMap: chain-map identity fails in grading " +
                            g.labels[k]);
                }
        }
    }
}

FilteredComplex makeTwoTermComplex(const FilteredVectorSpace& top,
                                   const FilteredVectorSpace& bottom,
                                   const NovMatrix& d) {
    if (top.group != bottom.group)
        throw GroupMismatch("makeTwoTermComplex: group mismatch");
    FilteredComplex c;
    c.grading = GradingSet::cycle({"k0", "k1"});
    c.pieces = {bottom, top};
    c.group = top.group;
    c.diff.resize(2, NovMatrix());
    c.diff[0] = d;  // into k0 from k1
    c.diff[1] = NovMatrix(top.dim(), bottom.dim(), c.group);  // zero block
    c.validate();
    return c;
}

}  // namespace nvk
