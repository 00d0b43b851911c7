#include "nvk/exponent_group.hpp"

#include <set>

namespace nvk {

ExponentGroup::ExponentGroup(const std::vector<Rat>& generators) : gen_(0) {
    std::set<Rat> seen;
    for (const Rat& g : generators) {
        if (g <= 0)
            throw InvariantViolation("ExponentGroup: generator " + ratStr(g) +
                                     " is not positive");
        if (!seen.insert(g).second)
            throw InvariantViolation("ExponentGroup: duplicate generator " +
                                     ratStr(g));
        gen_ = rationalGcd(gen_, g);
    }
}

ExponentGroup ExponentGroup::cyclic(const Rat& g) {
    if (g < 0)
        throw InvariantViolation("ExponentGroup: negative generator");
    ExponentGroup e;
    e.gen_ = g;
    return e;
}

bool ExponentGroup::contains(const Rat& q) const {
    if (q == 0) return true;
    if (isTrivial()) return false;
    Rat ratio = q / gen_;
    return ratio.get_den() == 1;
}

bool ExponentGroup::subgroupOf(const ExponentGroup& other) const {
    if (isTrivial()) return true;
    return other.contains(gen_);
}

ExponentGroup ExponentGroup::joinedWith(const Rat& q) const {
    return cyclic(rationalGcd(gen_, q));
}

ExponentGroup ExponentGroup::joinedWith(const ExponentGroup& other) const {
    return joinedWith(other.gen_);
}

Rat ExponentGroup::cosetRep(const Rat& q) const {
    if (isTrivial()) return q;
    Rat ratio = q / gen_;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num().get_mpz_t(),
               ratio.get_den().get_mpz_t());
    return q - Rat(fl) * gen_;
}

}  // namespace nvk
