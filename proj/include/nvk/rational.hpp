#pragma once

#include <gmpxx.h>

#include <string>

#include "nvk/errors.hpp"

namespace nvk {

using Rat = mpq_class;

// gcd on rationals: the generator of the group <a> + <b> inside (Q, +).
Rat rationalGcd(const Rat& a, const Rat& b);

// Exact rational from a decimal or fraction literal ("-2/3", "0.125", "3").
Rat parseRational(const std::string& text);

// Canonical text: "p" or "p/q" with q > 0.
std::string ratStr(const Rat& q);

// Rational with +/-infinity attached; used for valuations (+inf on the zero
// element) and filtration levels (-inf on the zero chain).
class Extended {
  public:
    enum class Kind { NegInf, Finite, PosInf };

    Extended() : kind_(Kind::Finite), value_(0) {}
    explicit Extended(Rat v) : kind_(Kind::Finite), value_(std::move(v)) {}

    static Extended posInf() { return Extended(Kind::PosInf); }
    static Extended negInf() { return Extended(Kind::NegInf); }
    static Extended finite(Rat v) { return Extended(std::move(v)); }

    bool isFinite() const { return kind_ == Kind::Finite; }
    bool isPosInf() const { return kind_ == Kind::PosInf; }
    bool isNegInf() const { return kind_ == Kind::NegInf; }

    const Rat& value() const {
        if (!isFinite()) throw Error("Extended: value() on infinite");
        return value_;
    }

    bool operator==(const Extended& o) const {
        if (kind_ != o.kind_) return false;
        return kind_ != Kind::Finite || value_ == o.value_;
    }
    bool operator!=(const Extended& o) const { return !(*this == o); }
    bool operator<(const Extended& o) const {
        if (kind_ == o.kind_) return kind_ == Kind::Finite && value_ < o.value_;
        if (kind_ == Kind::NegInf) return true;
        if (kind_ == Kind::PosInf) return false;
        return o.kind_ == Kind::PosInf;
    }
    bool operator<=(const Extended& o) const { return *this < o || *this == o; }
    bool operator>(const Extended& o) const { return o < *this; }
    bool operator>=(const Extended& o) const { return o <= *this; }

    // Addition with infinities absorbing; NegInf + PosInf is rejected.
    Extended operator+(const Extended& o) const;
    Extended operator-() const;
    Extended operator-(const Extended& o) const { return *this + (-o); }

    std::string str() const;

  private:
    explicit Extended(Kind k) : kind_(k), value_(0) {}
    Kind kind_;
    Rat value_;
};

Extended minExt(const Extended& a, const Extended& b);
Extended maxExt(const Extended& a, const Extended& b);

}  // namespace nvk
