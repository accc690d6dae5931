#include "doctest.h"
#include "frobtau/expr.hpp"
#include "frobtau/hierarchy.hpp"
#include "frobtau/polytropic.hpp"

using namespace ft;

TEST_CASE("polytropic coefficient tables") {
    CHECK(polytropic_a().size() == 9);
    CHECK(polytropic_b().size() == 7);
    for (long kn : {3L, 5L, -7L}) {
        Scalar k(kn);
        auto s = polytropic_deformation(k);
        CHECK(s.a[7] == (Scalar(120) * k).inverse());
        CHECK(s.b[6] == -(Scalar(360) * k).inverse());
        CHECK(s.a[8] == (Scalar(2) + Scalar(5) * k) * Scalar(1, 240));
        CHECK(s.b[4] == s.b[5]);
    }
    CHECK(polytropic_a()[0].str() == "(36 + 144*k - 59*k^2 + 19*k^3)/(5760*k^3)");
    CHECK(polytropic_b()[2].str() == "(-6 - 17*k + 5*k^2 - 2*k^3)/(288*k^3)");
}

TEST_CASE("polytropic dispersionless limit is a principal flow") {
    for (Scalar k : {Scalar(3), Scalar(5, 2)}) {
        auto s = polytropic_deformation(k);
        ThetaTable t(make_i2(k));
        auto X = flow_rhs(t, 1, 1);
        for (int c = 0; c < 2; ++c) CHECK(X[c] == dx(eps_part(s.flux[c], 0)));
    }
}

TEST_CASE("polytropic at kappa two") {
    auto s = polytropic_deformation(Scalar(2));
    for (const auto& f : s.flux) CHECK(eps_part(f, 4).is_zero());
    CHECK(s.flux[0] == parse_expression("1/2*v[1]^2 + v[2]^2 + 1/6*eps^2*v[2,2]"));
    CHECK(s.flux[1] == parse_expression("v[1]*v[2] + 1/6*eps^2*v[1,2]"));
    auto c0 = polytropic_coupling(s, 0);
    CHECK(c0[0].is_zero());
    CHECK(c0[1].is_zero());
    auto c2 = polytropic_coupling(s, 2);
    // w+_t picks up -(1/6)(rho_xxx + sqrt2 u_xxx) eps^2 which is not a multiple of w+_xxx
    CHECK_FALSE(c2[0].is_zero());
}
