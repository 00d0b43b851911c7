#pragma once

#include <string>
#include <vector>

#include "nvk/rational.hpp"

namespace nvk {

// Finitely generated subgroup of (Q, +). Every such subgroup is cyclic, so
// the canonical state is a single generator >= 0; zero encodes the trivial
// group. Membership and inclusion tests are exact.
class ExponentGroup {
  public:
    ExponentGroup() : gen_(0) {}
    explicit ExponentGroup(const std::vector<Rat>& generators);

    static ExponentGroup cyclic(const Rat& g);
    static ExponentGroup trivial() { return ExponentGroup(); }
    static ExponentGroup integers() { return cyclic(Rat(1)); }

    bool isTrivial() const { return gen_ == 0; }
    const Rat& generator() const { return gen_; }

    bool contains(const Rat& q) const;
    bool subgroupOf(const ExponentGroup& other) const;

    ExponentGroup joinedWith(const Rat& q) const;
    ExponentGroup joinedWith(const ExponentGroup& other) const;

    // Canonical coset representative of q modulo this group, in [0, gen).
    // For the trivial group the representative is q itself.
    Rat cosetRep(const Rat& q) const;

    bool operator==(const ExponentGroup& o) const { return gen_ == o.gen_; }
    bool operator!=(const ExponentGroup& o) const { return gen_ != o.gen_; }

    std::string str() const { return ratStr(gen_); }

  private:
    Rat gen_;
};

}  // namespace nvk
