#include "nvk/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace nvk {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

namespace {

std::vector<std::string> splitWs(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct LineReader {
    std::istringstream in;
    int lineNo = 0;
    explicit LineReader(const std::string& text) : in(text) {}
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("line " + std::to_string(lineNo) + ": " + msg);
    }
};

// Canonical ordering of gradings: sorted by label.
std::vector<int> sortedGradingOrder(const FilteredComplex& c) {
    std::vector<int> order(c.grading.size());
    for (int i = 0; i < c.grading.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.grading.labels[a] < c.grading.labels[b];
    });
    return order;
}

}  // namespace

std::string serializeComplex(const FilteredComplex& c,
                             const std::vector<int>* parity) {
    std::ostringstream os;
    os << "novikov-complex v1\n";
    os << "group " << c.group.str() << "\n";
    auto order = sortedGradingOrder(c);
    for (int k : order)
        os << "grading " << c.grading.labels[k] << " succ "
           << c.grading.labels[c.grading.succ[k]] << "\n";
    for (int k : order)
        for (int j = 0; j < c.pieces[k].dim(); ++j)
            os << "generator " << c.grading.labels[k] << " "
               << c.pieces[k].names[j] << " " << ratStr(c.pieces[k].levels[j])
               << "\n";
    if (parity) {
        std::map<std::string, int> lines;
        int idx = 0;
        for (int k = 0; k < c.grading.size(); ++k)
            for (int j = 0; j < c.pieces[k].dim(); ++j, ++idx)
                lines[c.pieces[k].names[j]] = (*parity)[idx];
        for (const auto& [name, p] : lines)
            os << "parity " << name << " " << p << "\n";
    }
    std::map<std::pair<std::string, std::string>, std::string> entries;
    for (int k = 0; k < c.grading.size(); ++k) {
        const auto& tgt = c.pieces[k];
        const auto& src = c.pieces[c.grading.succ[k]];
        for (int i = 0; i < tgt.dim(); ++i)
            for (int j = 0; j < src.dim(); ++j)
                if (c.diff[k].at(i, j).hasTerms())
                    entries[{tgt.names[i], src.names[j]}] =
                        c.diff[k].at(i, j).str();
    }
    for (const auto& [key, text] : entries)
        os << "diff " << key.first << " " << key.second << " " << text << "\n";
    os << "end\n";
    return os.str();
}

ParsedComplex parseComplex(const std::string& text) {
    LineReader r(text);
    std::string line;
    if (!r.next(line) || line != "novikov-complex v1")
        r.fail("expected header 'novikov-complex v1'");

    FilteredComplex c;
    bool haveGroup = false;
    std::vector<std::pair<std::string, std::string>> gradings;
    struct Gen {
        std::string grading, name;
        Rat level;
    };
    std::vector<Gen> gens;
    std::map<std::string, int> parities;
    std::vector<std::tuple<std::string, std::string, std::string>> diffs;

    while (r.next(line)) {
        if (line == "end") break;
        auto toks = splitWs(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "group") {
            if (toks.size() != 2) r.fail("group takes one generator");
            c.group = ExponentGroup::cyclic(parseRational(toks[1]));
            haveGroup = true;
        } else if (kw == "grading") {
            if (toks.size() != 4 || toks[2] != "succ")
                r.fail("expected 'grading <label> succ <label>'");
            gradings.emplace_back(toks[1], toks[3]);
        } else if (kw == "generator") {
            if (toks.size() != 4)
                r.fail("expected 'generator <grading> <name> <level>'");
            gens.push_back({toks[1], toks[2], parseRational(toks[3])});
        } else if (kw == "parity") {
            if (toks.size() != 3) r.fail("expected 'parity <name> <0|1>'");
            if (toks[2] != "0" && toks[2] != "1") r.fail("parity must be 0/1");
            parities[toks[1]] = toks[2] == "1" ? 1 : 0;
        } else if (kw == "diff") {
            if (toks.size() < 4)
                r.fail("expected 'diff <target> <source> <element>'");
            size_t pos = line.find(toks[2], line.find(toks[1]) + toks[1].size());
            std::string elem = line.substr(pos + toks[2].size());
            size_t b = elem.find_first_not_of(" \t");
            diffs.emplace_back(toks[1], toks[2], elem.substr(b));
        } else {
            r.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!haveGroup) throw ParseError("missing 'group' line");
    if (gradings.empty()) throw ParseError("missing 'grading' lines");

    for (const auto& [label, s] : gradings) c.grading.labels.push_back(label);
    c.grading.succ.resize(gradings.size());
    for (size_t i = 0; i < gradings.size(); ++i) {
        int t = c.grading.indexOf(gradings[i].second);
        if (t < 0)
            throw ParseError("unknown successor label '" + gradings[i].second +
                             "'");
        c.grading.succ[i] = t;
    }
    c.grading.validate();

    c.pieces.assign(c.grading.size(), FilteredVectorSpace{});
    for (auto& p : c.pieces) p.group = c.group;
    for (const auto& g : gens) {
        int k = c.grading.indexOf(g.grading);
        if (k < 0) throw ParseError("generator in unknown grading '" +
                                    g.grading + "'");
        c.pieces[k].names.push_back(g.name);
        c.pieces[k].levels.push_back(g.level);
    }

    c.diff.clear();
    for (int k = 0; k < c.grading.size(); ++k)
        c.diff.emplace_back(c.pieces[k].dim(),
                            c.pieces[c.grading.succ[k]].dim(), c.group);
    auto findGen = [&](const std::string& name) -> std::pair<int, int> {
        for (int k = 0; k < c.grading.size(); ++k) {
            int j = c.pieces[k].indexOf(name);
            if (j >= 0) return {k, j};
        }
        throw ParseError("unknown generator '" + name + "'");
    };
    for (const auto& [tname, sname, etext] : diffs) {
        auto [tk, ti] = findGen(tname);
        auto [sk, sj] = findGen(sname);
        if (c.grading.succ[tk] != sk)
            throw ParseError("diff entry (" + tname + ", " + sname +
                             ") does not map grading k+1 to k");
        c.diff[tk].at(ti, sj) = NovikovElement::parse(etext, c.group);
    }

    try {
        c.validate();
    } catch (const InvariantViolation& e) {
        throw InvariantViolation(std::string("complex file invalid: ") +
                                 e.what());
    }

    ParsedComplex out;
    out.complex = std::move(c);
    if (!parities.empty()) {
        for (int k = 0; k < out.complex.grading.size(); ++k)
            for (const auto& name : out.complex.pieces[k].names) {
                auto it = parities.find(name);
                if (it == parities.end())
                    throw ParseError("parity missing for generator '" + name +
                                     "'");
                out.parity.push_back(it->second);
            }
    }
    return out;
}

ParsedComplex loadComplexFile(const std::string& path) {
    return parseComplex(readFile(path));
}

void saveComplexFile(const FilteredComplex& c, const std::string& path,
                     const std::vector<int>* parity) {
    writeFile(path, serializeComplex(c, parity));
}

std::string serializeQuantum(const QuantumCorrection& q) {
    std::ostringstream os;
    std::string base = serializeComplex(q.deformed);
    base.erase(base.rfind("end\n"));
    base.replace(0, std::string("novikov-complex v1").size(),
                 "novikov-qc v1");
    os << base;
    std::map<std::pair<std::string, std::string>, Rat> entries;
    for (int k = 0; k < q.deformed.grading.size(); ++k) {
        const auto& tgt = q.deformed.pieces[k];
        const auto& src = q.deformed.pieces[q.deformed.grading.succ[k]];
        for (int i = 0; i < tgt.dim(); ++i)
            for (int j = 0; j < src.dim(); ++j) {
                const Rat& v = q.base[k][size_t(i) * src.dim() + j];
                if (v != 0) entries[{tgt.names[i], src.names[j]}] = v;
            }
    }
    for (const auto& [key, v] : entries)
        os << "base " << key.first << " " << key.second << " " << ratStr(v)
           << "\n";
    auto order = sortedGradingOrder(q.deformed);
    for (int k : order)
        os << "gap " << q.deformed.grading.labels[k] << " " << ratStr(q.gap[k])
           << "\n";
    os << "end\n";
    return os.str();
}

QuantumCorrection parseQuantum(const std::string& text) {
    // First pass: pull out base/gap lines, feed the rest to parseComplex.
    std::istringstream in(text);
    std::ostringstream complexText;
    std::vector<std::tuple<std::string, std::string, Rat>> baseEntries;
    std::map<std::string, Rat> gaps;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            if (line != "novikov-qc v1")
                throw ParseError("expected header 'novikov-qc v1'");
            complexText << "novikov-complex v1\n";
            first = false;
            continue;
        }
        auto toks = splitWs(line);
        if (!toks.empty() && toks[0] == "base") {
            if (toks.size() != 4)
                throw ParseError("expected 'base <target> <source> <value>'");
            baseEntries.emplace_back(toks[1], toks[2], parseRational(toks[3]));
        } else if (!toks.empty() && toks[0] == "gap") {
            if (toks.size() != 3)
                throw ParseError("expected 'gap <grading> <mu>'");
            gaps[toks[1]] = parseRational(toks[2]);
        } else {
            complexText << line << "\n";
        }
    }

    QuantumCorrection q;
    q.deformed = parseComplex(complexText.str()).complex;
    const int n = q.deformed.grading.size();
    q.base.resize(n);
    q.gap.assign(n, Rat(0));
    for (int k = 0; k < n; ++k)
        q.base[k].assign(size_t(q.deformed.pieces[k].dim()) *
                             q.deformed.pieces[q.deformed.grading.succ[k]].dim(),
                         Rat(0));
    auto findGen = [&](const std::string& name) -> std::pair<int, int> {
        for (int k = 0; k < n; ++k) {
            int j = q.deformed.pieces[k].indexOf(name);
            if (j >= 0) return {k, j};
        }
        throw ParseError("unknown generator '" + name + "' in base entry");
    };
    for (const auto& [tname, sname, v] : baseEntries) {
        auto [tk, ti] = findGen(tname);
        auto [sk, sj] = findGen(sname);
        if (q.deformed.grading.succ[tk] != sk)
            throw ParseError("base entry (" + tname + ", " + sname +
                             ") does not map grading k+1 to k");
        int cols = q.deformed.pieces[sk].dim();
        q.base[tk][size_t(ti) * cols + sj] = v;
    }
    for (int k = 0; k < n; ++k) {
        auto it = gaps.find(q.deformed.grading.labels[k]);
        if (it == gaps.end())
            throw ParseError("missing gap for grading '" +
                             q.deformed.grading.labels[k] + "'");
        q.gap[k] = it->second;
    }
    q.validate();
    requireValidGap(q);
    return q;
}

QuantumCorrection loadQuantumFile(const std::string& path) {
    return parseQuantum(readFile(path));
}

namespace {
std::string fmtDouble(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
}  // namespace

std::string serializeFamily(const BlockOperatorFamily& fam) {
    std::ostringstream os;
    os << "# asymptotic-family v1 n=" << fam.dim() << " T="
       << fmtDouble(fam.plateau()) << "\n";
    const int n = fam.dim();
    for (double s : fam.grid()) {
        os << fmtDouble(s);
        Mat b1 = fam.b1At(s), b2 = fam.b2At(s);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) os << "," << fmtDouble(b1(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) os << "," << fmtDouble(b2(i, j));
        os << "\n";
    }
    return os.str();
}

BlockOperatorFamily parseFamily(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty family file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int n = -1;
    double T = 0;
    {
        std::istringstream hs(line);
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("n=", 0) == 0) n = std::stoi(tok.substr(2));
            if (tok.rfind("T=", 0) == 0) T = std::stod(tok.substr(2));
        }
    }
    if (n <= 0 || T <= 0)
        throw ParseError("family header must carry n=<dim> T=<plateau>");
    std::vector<double> s;
    std::vector<Mat> b1, b2;
    int lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> vals;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != 1 + 2 * n * n)
            throw ParseError("family line " + std::to_string(lineNo) +
                             ": expected " + std::to_string(1 + 2 * n * n) +
                             " fields");
        s.push_back(vals[0]);
        Mat m1(n, n), m2(n, n);
        int idx = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m1(i, j) = vals[idx++];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m2(i, j) = vals[idx++];
        b1.push_back(m1);
        b2.push_back(m2);
    }
    return BlockOperatorFamily(std::move(s), std::move(b1), std::move(b2), T);
}

BlockOperatorFamily loadFamilyFile(const std::string& path) {
    return parseFamily(readFile(path));
}

SampledCircleFunction parseCircleCsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SampledCircleFunction f;
    std::vector<Rat> positions;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("circle csv line " + std::to_string(lineNo) +
                             ": expected 'position,value'");
        positions.push_back(parseRational(line.substr(0, comma)));
        f.samples.push_back(parseRational(line.substr(comma + 1)));
    }
    f.validate();
    const int N = static_cast<int>(f.samples.size());
    for (int i = 0; i < N; ++i) {
        Rat want(i, N);
        want.canonicalize();
        if (positions[i] != want)
            throw ParseError(
                "circle csv: positions must be the uniform grid i/N");
    }
    return f;
}

SampledCircleFunction loadCircleCsv(const std::string& path) {
    return parseCircleCsv(readFile(path));
}

}  // namespace nvk
