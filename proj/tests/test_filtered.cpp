#include <doctest.h>

#include "nvk/filtered_space.hpp"

using namespace nvk;

namespace {

FilteredVectorSpace standardSpace(int dim, const ExponentGroup& g) {
    FilteredVectorSpace v;
    v.group = g;
    for (int i = 0; i < dim; ++i) {
        v.names.push_back("x" + std::to_string(i + 1));
        v.levels.push_back(Rat(0));
    }
    return v;
}

}  // namespace

TEST_CASE("chain level follows the termwise formula") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace v;
    v.group = Z;
    v.names = {"x1", "x2"};
    v.levels = {Rat(3), Rat(0)};

    Chain c1 = basisChain(v, 0);
    CHECK(chainLevel(c1, v) == Extended(Rat(3)));

    // T^2 x1 + x2 -> max(3 - 2, 0 - 0) = 1
    Chain c2 = zeroChain(v);
    c2[0] = NovikovElement::monomial(Rat(1), Rat(2), Z);
    c2[1] = NovikovElement::one(Z);
    CHECK(chainLevel(c2, v) == Extended(Rat(1)));

    CHECK(chainLevel(zeroChain(v), v).isNegInf());

    // truncated-empty coordinate that could dominate is ambiguous
    Chain c3 = zeroChain(v);
    c3[0] = NovikovElement::zero(Z).truncatedBelow(Extended(Rat(1)));
    c3[1] = NovikovElement::one(Z);
    CHECK_THROWS_AS(chainLevel(c3, v), CutoffAmbiguous);
    // but is harmless when dominated
    c3[0] = NovikovElement::zero(Z).truncatedBelow(Extended(Rat(10)));
    CHECK(chainLevel(c3, v) == Extended(Rat(0)));
}

TEST_CASE("orthogonal basis extension") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace v = standardSpace(2, Z);

    SUBCASE("empty family extends to the distinguished basis") {
        auto basis = extendOrthogonalBasis({}, v);
        REQUIRE(basis.size() == 2);
        CHECK(basis[0][0].identicalTo(NovikovElement::one(Z)));
        CHECK(basis[1][1].identicalTo(NovikovElement::one(Z)));
    }

    SUBCASE("x1 + T x2 extends by x2") {
        Chain u = zeroChain(v);
        u[0] = NovikovElement::one(Z);
        u[1] = NovikovElement::monomial(Rat(1), Rat(1), Z);
        auto basis = extendOrthogonalBasis({u}, v);
        REQUIRE(basis.size() == 2);
        CHECK(basis[1][0].isZero());
        CHECK(basis[1][1].identicalTo(NovikovElement::one(Z)));
    }

    SUBCASE("dependent family is rejected") {
        Chain u1 = basisChain(v, 0);
        Chain u2 = zeroChain(v);
        u2[0] = NovikovElement::monomial(Rat(1), Rat(2), Z);
        CHECK_THROWS_AS(extendOrthogonalBasis({u1, u2}, v), NotIndependent);
    }

    SUBCASE("independent but non-orthogonal family is rejected") {
        // {x1, x1 + T x2}: reductions coincide, ell drops on u2 - u1
        Chain u1 = basisChain(v, 0);
        Chain u2 = basisChain(v, 0);
        u2[1] = NovikovElement::monomial(Rat(1), Rat(1), Z);
        CHECK_THROWS_AS(extendOrthogonalBasis({u1, u2}, v), NotOrthogonal);
    }
}

TEST_CASE("orthogonality on non-standard levels uses standardization") {
    ExponentGroup Z = ExponentGroup::integers();
    FilteredVectorSpace v;
    v.group = Z;
    v.names = {"a", "b"};
    v.levels = {Rat(1, 2), Rat(0)};
    Chain u = zeroChain(v);
    u[0] = NovikovElement::one(Z);
    u[1] = NovikovElement::one(Z);
    auto basis = extendOrthogonalBasis({u}, v);
    REQUIRE(basis.size() == 2);
    OrthogonalityReport rep = checkOrthogonality(basis, v);
    CHECK(rep.orthogonal);
}
