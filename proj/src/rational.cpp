#include "nvk/rational.hpp"

#include <cctype>

namespace nvk {

Rat rationalGcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    // gcd(p1/q1, p2/q2) = gcd(p1*q2, p2*q1) / (q1*q2)
    mpz_class n1 = a.get_num() * b.get_den();
    mpz_class n2 = b.get_num() * a.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
    Rat r(g, a.get_den() * b.get_den());
    r.canonicalize();
    return abs(r);
}

Rat parseRational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw ParseError("rational literal mixes '.' and '/': " + text);
        bool neg = false;
        std::string digits = s;
        if (digits[0] == '+' || digits[0] == '-') {
            neg = digits[0] == '-';
            digits = digits.substr(1);
            dot -= 1;
        }
        std::string intpart = digits.substr(0, dot);
        std::string frac = digits.substr(dot + 1);
        if (intpart.empty() && frac.empty())
            throw ParseError("bad decimal literal: " + text);
        for (char c : intpart + frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad decimal literal: " + text);
        mpz_class num(intpart.empty() ? "0" : intpart);
        mpz_class den(1);
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        Rat r(num, den);
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }

    auto validNum = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!validNum(s)) throw ParseError("bad rational literal: " + text);
        return Rat(mpz_class(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!validNum(num) || !validNum(den) || mpz_class(den) == 0)
        throw ParseError("bad rational literal: " + text);
    Rat r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

std::string ratStr(const Rat& q) { return q.get_str(); }

Extended Extended::operator+(const Extended& o) const {
    if (isFinite() && o.isFinite()) return Extended(value_ + o.value_);
    if (isPosInf() && o.isNegInf()) throw Error("Extended: inf + (-inf)");
    if (isNegInf() && o.isPosInf()) throw Error("Extended: (-inf) + inf");
    if (isPosInf() || o.isPosInf()) return posInf();
    return negInf();
}

Extended Extended::operator-() const {
    if (isPosInf()) return negInf();
    if (isNegInf()) return posInf();
    return Extended(Rat(-value_));
}

std::string Extended::str() const {
    if (isPosInf()) return "inf";
    if (isNegInf()) return "-inf";
    return ratStr(value_);
}

Extended minExt(const Extended& a, const Extended& b) { return a < b ? a : b; }
Extended maxExt(const Extended& a, const Extended& b) { return a < b ? b : a; }

}  // namespace nvk
