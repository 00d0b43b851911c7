#include "nvk/novikov.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nvk {

void requireSameGroup(const NovikovElement& a, const NovikovElement& b,
                      const char* op) {
    if (a.group() != b.group())
        throw GroupMismatch(std::string(op) + ": operands over different "
                            "exponent groups (" + a.group().str() + " vs " +
                            b.group().str() + ")");
}

NovikovElement NovikovElement::monomial(const Rat& coeff, const Rat& exp,
                                        const ExponentGroup& g) {
    NovikovElement e(g);
    if (coeff != 0) e.terms_.push_back({exp, coeff});
    e.checkMembership();
    return e;
}

NovikovElement NovikovElement::fromTerms(std::vector<Term> terms,
                                         const ExponentGroup& g,
                                         Extended cutoff) {
    std::map<Rat, Rat> acc;
    for (auto& t : terms) acc[t.exp] += t.coeff;
    NovikovElement e(g);
    e.cutoff_ = std::move(cutoff);
    for (auto& [exp, c] : acc) {
        if (c == 0) continue;
        if (Extended(exp) >= e.cutoff_) continue;
        e.terms_.push_back({exp, c});
    }
    e.checkMembership();
    return e;
}

void NovikovElement::checkMembership() const {
    for (const auto& t : terms_)
        if (!group_.contains(t.exp))
            throw GroupMismatch("exponent " + ratStr(t.exp) +
                                " not in exponent group <" + group_.str() +
                                ">");
}

Extended NovikovElement::valuation() const {
    if (!terms_.empty()) return Extended(terms_.front().exp);
    if (isExact()) return Extended::posInf();
    throw CutoffAmbiguous(
        "valuation of truncated element with no visible terms (cutoff " +
        cutoff_.str() + ")");
}

Extended NovikovElement::valuationLowerBound() const {
    if (!terms_.empty()) return Extended(terms_.front().exp);
    return cutoff_;
}

const Rat& NovikovElement::leadingCoeff() const {
    if (terms_.empty()) throw Error("leadingCoeff of empty element");
    return terms_.front().coeff;
}

NovikovElement NovikovElement::truncatedBelow(const Extended& newCutoff) const {
    NovikovElement r(group_);
    r.cutoff_ = minExt(cutoff_, newCutoff);
    for (const auto& t : terms_)
        if (Extended(t.exp) < r.cutoff_) r.terms_.push_back(t);
    return r;
}

NovikovElement NovikovElement::shifted(const Rat& exponent) const {
    if (!group_.contains(exponent))
        throw GroupMismatch("shift exponent " + ratStr(exponent) +
                            " not in exponent group <" + group_.str() + ">");
    NovikovElement r(group_);
    r.cutoff_ = cutoff_ + Extended(exponent);
    for (const auto& t : terms_) r.terms_.push_back({t.exp + exponent, t.coeff});
    return r;
}

NovikovElement NovikovElement::scaled(const Rat& c) const {
    if (c == 0) {
        NovikovElement r(group_);
        r.cutoff_ = cutoff_;
        return r;
    }
    NovikovElement r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

NovikovElement NovikovElement::overGroup(const ExponentGroup& g) const {
    NovikovElement r = *this;
    r.group_ = g;
    r.checkMembership();
    return r;
}

Rat NovikovElement::coeffAt(const Rat& e) const {
    for (const auto& t : terms_) {
        if (t.exp == e) return t.coeff;
        if (t.exp > e) break;
    }
    return Rat(0);
}

NovikovElement NovikovElement::cosetPart(const Rat& rep,
                                         const ExponentGroup& sub) const {
    NovikovElement r(sub);
    r.cutoff_ = cutoff_ + Extended(Rat(-rep));
    for (const auto& t : terms_)
        if (sub.contains(t.exp - rep)) r.terms_.push_back({t.exp - rep, t.coeff});
    return r;
}

NovikovElement NovikovElement::subgroupPart(const ExponentGroup& sub) const {
    NovikovElement r(sub);
    r.cutoff_ = cutoff_;
    for (const auto& t : terms_)
        if (sub.contains(t.exp)) r.terms_.push_back(t);
    return r;
}

NovikovElement NovikovElement::operator-() const { return scaled(Rat(-1)); }

NovikovElement operator+(const NovikovElement& a, const NovikovElement& b) {
    requireSameGroup(a, b, "add");
    NovikovElement r(a.group_);
    r.cutoff_ = minExt(a.cutoff_, b.cutoff_);
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        bool takeA = j >= b.terms_.size() ||
                     (i < a.terms_.size() &&
                      a.terms_[i].exp < b.terms_[j].exp);
        bool takeBoth = i < a.terms_.size() && j < b.terms_.size() &&
                        a.terms_[i].exp == b.terms_[j].exp;
        NovikovElement::Term t;
        if (takeBoth) {
            t = {a.terms_[i].exp, a.terms_[i].coeff + b.terms_[j].coeff};
            ++i, ++j;
        } else if (takeA) {
            t = a.terms_[i++];
        } else {
            t = b.terms_[j++];
        }
        if (t.coeff != 0 && Extended(t.exp) < r.cutoff_) r.terms_.push_back(t);
    }
    return r;
}

NovikovElement operator-(const NovikovElement& a, const NovikovElement& b) {
    return a + (-b);
}

NovikovElement operator*(const NovikovElement& a, const NovikovElement& b) {
    requireSameGroup(a, b, "mul");
    // Exactness bound: err(a)*b has exponents >= cutoff(a) + nu(b), and
    // symmetrically; an empty factor contributes its cutoff as nu bound.
    Extended cut = Extended::posInf();
    if (!a.isExact() || !b.isExact()) {
        Extended ca = a.cutoff_ + b.valuationLowerBound();
        Extended cb = b.cutoff_ + a.valuationLowerBound();
        cut = minExt(ca, cb);
    }
    std::map<Rat, Rat> acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Rat e = ta.exp + tb.exp;
            if (Extended(e) >= cut) continue;
            acc[e] += ta.coeff * tb.coeff;
        }
    NovikovElement r(a.group_);
    r.cutoff_ = cut;
    for (auto& [e, c] : acc)
        if (c != 0) r.terms_.push_back({e, c});
    return r;
}

NovikovElement NovikovElement::inverse(const Extended& below) const {
    if (isZero()) throw DivisionByZero("inverse of zero");
    if (isTruncatedEmpty())
        throw CutoffAmbiguous("inverse of truncated element with no visible "
                              "terms");
    const Rat a = terms_.front().exp;
    const Rat c = terms_.front().coeff;
    // x = c T^a (1 + h), nu(h) > 0; x^-1 = c^-1 T^-a sum (-h)^k.
    // From a truncated x we know h below cutoff - a, so the inverse is exact
    // below cutoff - 2a.
    Extended exactBound = isExact()
                              ? Extended::posInf()
                              : cutoff_ + Extended(Rat(-2 * a));
    Extended target = minExt(below, exactBound);

    NovikovElement h(group_);
    h.cutoff_ = cutoff_ + Extended(Rat(-a));
    for (size_t i = 1; i < terms_.size(); ++i)
        h.terms_.push_back({terms_[i].exp - a, terms_[i].coeff / c});

    if (h.terms_.empty()) {
        // Monomial: exact inverse regardless of the requested window.
        return monomial(Rat(1) / c, Rat(-a), group_);
    }
    if (!target.isFinite())
        throw Error("inverse: non-monomial series inverse needs a finite "
                    "cutoff");

    Extended seriesBound = target + Extended(a);  // window for sum (-h)^k
    NovikovElement sum = one(group_).truncatedBelow(seriesBound);
    NovikovElement pw = one(group_);
    const Rat hval = h.terms_.front().exp;
    Rat pwVal(0);
    while (true) {
        pwVal += hval;
        if (Extended(pwVal) >= seriesBound) break;
        pw = (pw * (-h)).truncatedBelow(seriesBound);
        if (pw.terms_.empty()) break;
        sum = sum + pw;
    }
    NovikovElement r = sum.shifted(Rat(-a)).scaled(Rat(1) / c);
    return r.truncatedBelow(target);
}

bool NovikovElement::identicalTo(const NovikovElement& o) const {
    if (group_ != o.group_ || cutoff_ != o.cutoff_ ||
        terms_.size() != o.terms_.size())
        return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp ||
            terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

bool NovikovElement::agreesBelow(const NovikovElement& o,
                                 const Extended& bound) const {
    if (bound > cutoff_ || bound > o.cutoff_)
        throw CutoffAmbiguous("agreesBelow: bound exceeds a cutoff");
    size_t i = 0, j = 0;
    while (true) {
        while (i < terms_.size() && !(Extended(terms_[i].exp) < bound)) ++i;
        while (j < o.terms_.size() && !(Extended(o.terms_[j].exp) < bound)) ++j;
        bool ea = i >= terms_.size(), eb = j >= o.terms_.size();
        if (ea || eb) return ea && eb;
        if (terms_[i].exp != o.terms_[j].exp ||
            terms_[i].coeff != o.terms_[j].coeff)
            return false;
        ++i, ++j;
    }
}

std::string NovikovElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << "; ";
        os << ratStr(terms_[i].coeff) << "*T^" << ratStr(terms_[i].exp);
    }
    return os.str();
}

NovikovElement NovikovElement::parse(const std::string& text,
                                     const ExponentGroup& g) {
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };
    std::string body = trim(text);
    if (body.empty()) throw ParseError("empty Novikov element");
    if (body == "0") return zero(g);

    std::vector<Term> terms;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t next = body.find(';', pos);
        std::string piece = trim(body.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos));
        if (piece.empty()) throw ParseError("empty term in element: " + text);
        size_t star = piece.find('*');
        if (star == std::string::npos)
            throw ParseError("term missing '*': " + piece);
        std::string coeff = trim(piece.substr(0, star));
        std::string rest = trim(piece.substr(star + 1));
        if (rest.size() < 3 || rest[0] != 'T' || rest[1] != '^')
            throw ParseError("term missing 'T^': " + piece);
        Term t;
        t.coeff = parseRational(coeff);
        t.exp = parseRational(rest.substr(2));
        terms.push_back(t);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return fromTerms(std::move(terms), g);
}

}  // namespace nvk
