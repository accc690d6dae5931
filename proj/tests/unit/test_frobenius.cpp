#include "doctest.h"
#include "frobtau/expr.hpp"
#include "frobtau/frobenius.hpp"

using namespace ft;

namespace {

JetPoly P(const char* s) { return parse_expression(s); }

std::vector<FrobeniusModel> all_models() { return {make_kdv(), make_cp1(), make_i2(Scalar(3)), make_i2(Scalar(5, 2))}; }

}  // namespace

TEST_CASE("structure constants") {
    auto c = structure_constants(make_cp1());
    CHECK(c[1][1][0] == JetPoly::expv(2));
    CHECK(c[1][1][1].is_zero());
    CHECK(c[0][1][1] == JetPoly(1));
    CHECK(c[0][0][0] == JetPoly(1));
    CHECK(structure_constants(make_kdv())[0][0][0] == JetPoly(1));
    CHECK(third_derivative(make_kdv(), 0, 0, 0) == JetPoly(1));
    auto ci = structure_constants(make_i2(Scalar(4)));
    CHECK(ci[1][1][0] == P("4*v[2]^2"));
}

TEST_CASE("builtin models validate") {
    for (const auto& m : all_models()) {
        INFO(m.name);
        auto r = validate_model(m);
        CHECK(r.associativity.empty());
        CHECK(r.unity.empty());
        CHECK(r.quasihomogeneity.is_zero());
    }
}

TEST_CASE("wrong charge is caught by quasihomogeneity") {
    ScalarMatrix eta{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    JetPoly F = P("1/2*v[1]^2*v[2] + v[2]^4");
    std::vector<JetPoly> E{P("v[1]"), P("2/3*v[2]")};
    auto good = make_model(2, eta, F, E, Scalar(1, 3), {Scalar(-1, 6), Scalar(1, 6)}, {});
    CHECK(validate_model(good).ok());
    auto bad = make_model(2, eta, F, E, Scalar(1, 2), {Scalar(-1, 6), Scalar(1, 6)}, {});
    auto r = validate_model(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.quasihomogeneity == P("1/12*v[1]^2*v[2] + 1/6*v[2]^4"));
}

TEST_CASE("non-associative potential") {
    ScalarMatrix eta = {{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1), Scalar(0)}};
    JetPoly F = P("1/6*v[1]^3 + v[1]*v[2]*v[3] + v[2]^2*v[3]^2");
    auto m = make_model(3, eta, F, {P("v[1]"), P("v[2]"), P("v[3]")}, Scalar(0), {Scalar(0), Scalar(0), Scalar(0)}, {});
    CHECK_FALSE(validate_model(m).associativity.empty());
}

TEST_CASE("invalid model data") {
    CHECK_THROWS_AS(make_i2(Scalar(1)), InvalidModel);
    CHECK_THROWS_AS(builtin_model("a3"), UnsupportedModel);
    CHECK_THROWS_AS(builtin_model("i2"), InvalidModel);
    ScalarMatrix eta{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    ScalarMatrix R{{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
    CHECK_THROWS_AS(make_model(2, eta, P("1/2*v[1]^2*v[2]"), {P("v[1]"), JetPoly()}, Scalar(1),
                               {Scalar(-1, 2), Scalar(1, 2)}, R),
                    InvalidModel);
}

TEST_CASE("R decomposition") {
    auto m = make_cp1();
    CHECK(m.max_R_degree() == 1);
    CHECK(m.R_part(1)[1][0] == Scalar(2));
    CHECK(m.R_part(2)[1][0].is_zero());
    CHECK(make_kdv().max_R_degree() == 0);
}

TEST_CASE("intersection forms") {
    auto cp = intersection_form(make_cp1());
    CHECK(cp.g[0][0] == P("2*exp(v[2])"));
    CHECK(cp.g[0][1] == P("v[1]"));
    CHECK(cp.g[1][0] == P("v[1]"));
    CHECK(cp.g[1][1] == JetPoly(2));
    auto kd = intersection_form(make_kdv());
    CHECK(kd.g[0][0] == P("v[1]"));
    CHECK(kd.gamma[0][0][0] == JetPoly(Scalar(1, 2)));
    auto i3 = intersection_form(make_i2(Scalar(3)));
    CHECK(i3.g[0][0] == P("2*v[2]^2"));
    CHECK(i3.g[1][1] == P("2/3*v[2]"));
    CHECK(i3.g[0][1] == P("v[1]"));
}

TEST_CASE("hydrodynamic pencils are flat and compatible") {
    for (const auto& m : all_models()) {
        INFO(m.name);
        auto [p1, p2] = hydrodynamic_pencil(m);
        CHECK(jacobi_residual(p1).is_zero());
        CHECK(jacobi_residual(p2).is_zero());
        CHECK(compatibility_residual(p1, p2).is_zero());
    }
}

TEST_CASE("canonical coordinates") {
    for (const auto& m : all_models()) {
        INFO(m.name);
        auto d = canonical_coordinates(m);
        auto jac = canonical_jacobian(m, d);
        auto dv = invert_matrix(jac);
        auto c = structure_constants(m);
        // U d/du_i = u_i d/du_i with U^a_b = E^e c_{eb}^a
        for (int i = 0; i < m.n; ++i)
            for (int a = 0; a < m.n; ++a) {
                JetPoly lhs;
                for (int b = 0; b < m.n; ++b)
                    for (int e = 0; e < m.n; ++e) lhs += m.euler[e] * c[e][b][a] * dv[b][i];
                CHECK(lhs == d.u[i] * dv[a][i]);
            }
        // eta_ab = sum h_i^2 du_i/dv^a du_i/dv^b
        for (int a = 0; a < m.n; ++a)
            for (int b = 0; b < m.n; ++b) {
                JetPoly s;
                for (int i = 0; i < m.n; ++i) s += d.h_squared[i] * jac[i][a] * jac[i][b];
                CHECK(s == JetPoly(m.eta[a][b]));
            }
        if (m.n == 2) {
            // V_12^2 = h_1^2 h_2^2 (sum du_1 mu eta^-1 du_2)^2
            JetPoly w;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) w += jac[0][a] * m.eta_inv[a][b] * jac[1][b] * m.mu[a];
            JetPoly v2 = d.h_squared[0] * d.h_squared[1] * w * w;
            CHECK(v2 == JetPoly(d.V[0][1] * d.V[0][1]));
            CHECK(d.V[1][0] == -d.V[0][1]);
        }
    }
}

TEST_CASE("cp1 canonical closed forms") {
    auto d = canonical_coordinates(make_cp1());
    JetPoly u12 = d.u[0] - d.u[1];
    CHECK(u12 == P("4*exp(1/2*v[2])"));
    for (int i = 0; i < 2; ++i) CHECK(d.h_squared[i] == u12.pow(d.h_exponent * Frac(2)) * (d.h_coeff[i] * d.h_coeff[i]));
    CHECK(d.h_squared[0] == u12.pow(Frac(-1)) * Scalar(2));
    Scalar i = Scalar::generator(generator_index("i"));
    CHECK(d.V[0][1] == -i * Scalar(1, 2));
}

TEST_CASE("tau_I exponents and kappa0") {
    auto t = isomonodromic_tau_exponents(make_cp1());
    CHECK(t.V12_squared == Scalar(-1, 4));
    CHECK(t.exponent == Scalar(-1, 8));
    auto t3 = isomonodromic_tau_exponents(make_i2(Scalar(3)));
    CHECK(t3.V12_squared == Scalar(-1, 36));
    CHECK(isomonodromic_tau_exponents(make_kdv()).exponent.is_zero());
    CHECK(kappa0(make_kdv()) == Scalar(1, 16));
    CHECK(kappa0(make_cp1()).is_zero());
}

TEST_CASE("i2 metric coefficients scale as a power of u12") {
    for (auto k : {Frac(3), Frac(5, 2), Frac(4)}) {
        auto m = make_i2(Scalar(k.num, k.den));
        auto d = canonical_coordinates(m);
        INFO(m.name);
        CHECK(d.h_exponent == Frac(1) / k - Frac(1, 2));
        JetPoly u12 = d.u[0] - d.u[1];
        REQUIRE(u12.terms().size() == 1);
        Frac pu = u12.terms().begin()->first.power(Atom::jet(2, 0));
        for (int i = 0; i < 2; ++i) {
            REQUIRE(d.h_squared[i].terms().size() == 1);
            const auto& mono = d.h_squared[i].terms().begin()->first;
            CHECK(mono.factors().size() == 1);
            CHECK(mono.power(Atom::jet(2, 0)) == pu * d.h_exponent * Frac(2));
        }
    }
}
