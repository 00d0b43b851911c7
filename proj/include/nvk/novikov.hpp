#pragma once

#include <string>
#include <vector>

#include "nvk/exponent_group.hpp"
#include "nvk/rational.hpp"

namespace nvk {

// Element of the Novikov field over Q with exponents in a finitely generated
// subgroup of Q. Terms are kept sorted by exponent with nonzero coefficients;
// every exponent strictly below `cutoff` is represented exactly. A cutoff of
// +inf means the element is an exact finite sum.
class NovikovElement {
  public:
    struct Term {
        Rat exp;
        Rat coeff;
    };

    NovikovElement() : cutoff_(Extended::posInf()) {}
    explicit NovikovElement(ExponentGroup g)
        : group_(std::move(g)), cutoff_(Extended::posInf()) {}

    static NovikovElement zero(const ExponentGroup& g) {
        return NovikovElement(g);
    }
    static NovikovElement one(const ExponentGroup& g) {
        return monomial(Rat(1), Rat(0), g);
    }
    static NovikovElement constant(const Rat& c, const ExponentGroup& g) {
        return monomial(c, Rat(0), g);
    }
    static NovikovElement monomial(const Rat& coeff, const Rat& exp,
                                   const ExponentGroup& g);
    static NovikovElement fromTerms(std::vector<Term> terms,
                                    const ExponentGroup& g,
                                    Extended cutoff = Extended::posInf());

    const ExponentGroup& group() const { return group_; }
    const std::vector<Term>& terms() const { return terms_; }
    const Extended& cutoff() const { return cutoff_; }

    bool isExact() const { return cutoff_.isPosInf(); }
    // True zero: no terms and nothing can hide above the cutoff.
    bool isZero() const { return terms_.empty() && isExact(); }
    // No visible terms but a finite cutoff: indistinguishable from zero.
    bool isTruncatedEmpty() const { return terms_.empty() && !isExact(); }
    bool hasTerms() const { return !terms_.empty(); }

    // nu: least exponent with nonzero coefficient; +inf on the zero element.
    // Throws CutoffAmbiguous on a truncated-empty element.
    Extended valuation() const;
    // Like valuation() but returns the cutoff instead of throwing; suitable
    // for cutoff-propagation arithmetic.
    Extended valuationLowerBound() const;
    const Rat& leadingCoeff() const;

    NovikovElement truncatedBelow(const Extended& newCutoff) const;
    NovikovElement shifted(const Rat& exponent) const;  // multiply by T^e
    NovikovElement scaled(const Rat& c) const;
    // Reinterpret over a supergroup (exponents unchanged).
    NovikovElement overGroup(const ExponentGroup& g) const;

    // Coefficient of T^e (zero if absent; ambiguity above cutoff ignored).
    Rat coeffAt(const Rat& e) const;
    // The part of the element supported on the coset rep + subgroup, divided
    // by T^rep, reinterpreted over `sub`. Used by the witness projection.
    NovikovElement cosetPart(const Rat& rep, const ExponentGroup& sub) const;
    // Keep only exponents lying in `sub` and reinterpret over it.
    NovikovElement subgroupPart(const ExponentGroup& sub) const;

    NovikovElement operator-() const;
    friend NovikovElement operator+(const NovikovElement& a,
                                    const NovikovElement& b);
    friend NovikovElement operator-(const NovikovElement& a,
                                    const NovikovElement& b);
    friend NovikovElement operator*(const NovikovElement& a,
                                    const NovikovElement& b);

    // Series inverse, exact below the smaller of `below` and what the
    // operand's own cutoff supports. Throws DivisionByZero / CutoffAmbiguous.
    NovikovElement inverse(const Extended& below = Extended::posInf()) const;

    // Representation equality (terms and cutoff).
    bool identicalTo(const NovikovElement& o) const;
    // Agreement of all terms with exponent strictly below `bound`; `bound`
    // must not exceed either cutoff.
    bool agreesBelow(const NovikovElement& o, const Extended& bound) const;
    bool isZeroBelowCutoff() const { return terms_.empty(); }

    // Textual form: "1*T^0; -2/3*T^5/2"; zero prints "0".
    std::string str() const;
    static NovikovElement parse(const std::string& text,
                                const ExponentGroup& g);

  private:
    void checkMembership() const;
    ExponentGroup group_;
    std::vector<Term> terms_;
    Extended cutoff_;
};

void requireSameGroup(const NovikovElement& a, const NovikovElement& b,
                      const char* op);

}  // namespace nvk
