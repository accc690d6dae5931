#include "doctest.h"
#include "frobtau/expr.hpp"
#include "frobtau/hierarchy.hpp"
#include "random_poly.hpp"

#include <random>

using namespace ft;

namespace {

JetPoly P(const char* s) { return parse_expression(s); }

JetPoly vpow(int a, Frac k) { return JetPoly::v(a).pow(k); }

bool all_zero(const std::vector<JetPoly>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// I2(kappa) deformed flat coordinates as power series in z:
// theta_1 = e^{z v1} sum_m v2^{m kappa + 1} z^{2m} / (m! prod_{j<=m} kappa (j + 1/kappa))
// theta_2 = (e^{z v1} sum_m v2^{m kappa} z^{2m} / (m! prod_{j<=m} kappa (j - 1/kappa)) - 1)/z
JetPoly i2_theta(int alpha, int p, const mpq_class& kappa, Frac kf) {
    JetPoly out;
    mpq_class c = 1;
    int top = alpha == 1 ? p : p + 1;
    for (int m = 0; 2 * m <= top; ++m) {
        if (m > 0) c /= kappa * (m + (alpha == 1 ? 1 : -1) / kappa) * m;
        int r = top - 2 * m;
        Frac e = kf * Frac(m) + Frac(alpha == 1 ? 1 : 0);
        out += vpow(2, e) * vpow(1, Frac(r)) * Scalar(c / factorial(r));
    }
    return out;
}

}  // namespace

TEST_CASE("kdv theta") {
    ThetaTable t(make_kdv());
    for (int p = 0; p <= 6; ++p) CHECK(t.theta(1, p) == vpow(1, Frac(p + 1)) * Scalar(mpq_class(1) / factorial(p + 1)));
}

TEST_CASE("theta_{alpha,1} is the gradient of F") {
    for (auto m : {make_kdv(), make_cp1(), make_i2(Scalar(3)), make_i2(Scalar(7, 3))}) {
        INFO(m.name);
        ThetaTable t(m);
        for (int a = 1; a <= m.n; ++a) CHECK(t.theta(a, 1) == partial(m.F, Atom::jet(a, 0)));
        // theta_{1,2} = v^e d_e F - 2F
        JetPoly h = m.F * Scalar(-2);
        for (int e = 1; e <= m.n; ++e) h += JetPoly::v(e) * partial(m.F, Atom::jet(e, 0));
        if (m.n == 2) CHECK(t.theta(1, 2) == h);
    }
}

TEST_CASE("cp1 printed theta list") {
    ThetaTable t(make_cp1());
    CHECK(t.theta(1, 0) == P("v[2]"));
    CHECK(t.theta(2, 0) == P("v[1]"));
    CHECK(t.theta(1, 1) == P("v[1]*v[2]"));
    CHECK(t.theta(2, 1) == P("exp(v[2]) + 1/2*v[1]^2"));
    CHECK(t.theta(1, 2) == P("1/2*v[1]^2*v[2] + v[2]*exp(v[2]) - 2*exp(v[2])"));
    CHECK(t.theta(2, 2) == P("1/6*v[1]^3 + v[1]*exp(v[2])"));
    CHECK(t.theta(1, 3) == P("1/6*v[1]^3*v[2] + v[1]*v[2]*exp(v[2]) - 2*v[1]*exp(v[2])"));
    CHECK(t.theta(2, 3) == P("1/24*v[1]^4 + 1/2*v[1]^2*exp(v[2]) + 1/4*exp(2*v[2])"));
}

TEST_CASE("i2 theta matches the deformed flat coordinate series") {
    for (auto k : {mpq_class(3), mpq_class(5, 2), mpq_class(4)}) {
        auto m = make_i2(Scalar(k));
        ThetaTable t(m);
        Frac kf(k.get_num().get_si(), k.get_den().get_si());
        for (int p = 0; p <= 5; ++p)
            for (int a = 1; a <= 2; ++a) {
                INFO(m.name << " alpha=" << a << " p=" << p);
                CHECK(t.theta(a, p) == i2_theta(a, p, k, kf));
            }
    }
}

TEST_CASE("theta table invariants") {
    for (auto m : {make_kdv(), make_cp1(), make_i2(Scalar(3)), make_i2(Scalar(-3))}) {
        INFO(m.name);
        ThetaTable t(m);
        auto c = structure_constants(m);
        for (int a = 1; a <= m.n; ++a) {
            for (int p = 1; p <= 5; ++p) {
                CHECK(partial(t.theta(a, p), Atom::jet(1, 0)) == t.theta(a, p - 1));
                for (int l = 0; l < m.n; ++l)
                    for (int mu = 0; mu < m.n; ++mu) {
                        JetPoly rhs;
                        for (int nu = 0; nu < m.n; ++nu) rhs += c[l][mu][nu] * t.grad(a, p - 1, nu + 1);
                        CHECK(partial(t.grad(a, p, mu + 1), Atom::jet(l + 1, 0)) == rhs);
                    }
            }
            // leading terms in v^1
            for (int k = 0; k <= 4; ++k) {
                JetPoly th = t.theta(a, k);
                JetPoly lead, next;
                for (const auto& [mono, coef] : th.terms()) {
                    Frac d = mono.power(Atom::jet(1, 0));
                    if (d == Frac(k + 1)) lead.add(mono, coef);
                    if (d == Frac(k)) next.add(mono, coef);
                    CHECK(d <= Frac(k + 1));
                }
                JetPoly want = vpow(1, Frac(k + 1)) * (m.eta[a - 1][0] * Scalar(mpq_class(1) / factorial(k + 1)));
                CHECK(lead == want);
                JetPoly want_next;
                for (int g = 2; g <= m.n; ++g)
                    want_next += JetPoly::v(g) * vpow(1, Frac(k)) * (m.eta[a - 1][g - 1] * Scalar(mpq_class(1) / factorial(k)));
                JetPoly next_linear;
                for (const auto& [mono, coef] : next.terms()) {
                    Monomial rest = mono.without(Atom::jet(1, 0));
                    bool linear = rest.factors().size() == 1 && rest.factors()[0].first.kind == AtomKind::Jet &&
                                  rest.factors()[0].second == Frac(1);
                    if (linear) next_linear.add(mono, coef);
                }
                if (m.builtin != Builtin::CP1) CHECK(next_linear == want_next);
            }
        }
    }
}

TEST_CASE("resonant model without closed form") {
    auto cp = make_cp1();
    auto generic = make_model(2, cp.eta, cp.F, cp.euler, cp.charge, cp.mu, cp.R, "cp1-generic");
    ThetaTable t(generic);
    CHECK_THROWS_AS(t.theta(1, 2), ResonanceUnresolved);
}

TEST_CASE("principal hierarchy flows") {
    ThetaTable k(make_kdv());
    CHECK(flow_rhs(k, 1, 0)[0] == P("v[1,1]"));
    CHECK(flow_rhs(k, 1, 1)[0] == P("v[1]*v[1,1]"));
    CHECK(flow_rhs(k, 1, 3)[0] == P("1/6*v[1]^3*v[1,1]"));
    ThetaTable c(make_cp1());
    auto x10 = flow_rhs(c, 1, 0);
    CHECK(x10[0] == P("v[1,1]"));
    CHECK(x10[1] == P("v[2,1]"));
    auto x20 = flow_rhs(c, 2, 0);
    // rho_tt = (e^rho)_xx
    CHECK(evolution_derivative(x20[1], x20) == dx(JetPoly::expv(2), 2));
    auto x11 = flow_rhs(c, 1, 1);
    CHECK(x11[0] == P("v[1]*v[1,1] + v[2]*exp(v[2])*v[2,1]"));
    CHECK(x11[1] == P("v[1]*v[2,1] + v[2]*v[1,1]"));
}

TEST_CASE("flow commutativity") {
    ThetaTable k(make_kdv());
    CHECK(all_zero(check_flow_commutativity(k, {1, 1}, {1, 2})));
    CHECK(all_zero(check_flow_commutativity(k, {1, 2}, {1, 4})));
    ThetaTable c(make_cp1());
    CHECK(all_zero(check_flow_commutativity(c, {1, 1}, {2, 0})));
    CHECK(all_zero(check_flow_commutativity(c, {1, 2}, {2, 2})));
    CHECK(all_zero(check_flow_commutativity(c, {1, 0}, {2, 3})));
    ThetaTable i(make_i2(Scalar(3)));
    CHECK(all_zero(check_flow_commutativity(i, {1, 1}, {2, 2})));
    // a non-member flow does not commute
    auto X = flow_rhs(k, 1, 1);
    std::vector<JetPoly> Y{P("v[1]^2*v[1,1]*v[1,1]")};
    CHECK_FALSE(evolution_derivative(X[0], Y) - evolution_derivative(Y[0], X) == JetPoly());
}

TEST_CASE("omega pairing") {
    ThetaTable k(make_kdv());
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
            mpq_class c = mpq_class(1) / (factorial(p) * factorial(q) * (p + q + 1));
            CHECK(omega(k, 1, p, 1, q) == vpow(1, Frac(p + q + 1)) * Scalar(c));
        }
    for (auto m : {make_cp1(), make_i2(Scalar(3))}) {
        INFO(m.name);
        ThetaTable t(m);
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                CHECK(omega(t, a, 0, b, 0) == partial(partial(m.F, Atom::jet(a, 0)), Atom::jet(b, 0)));
                for (int p = 0; p <= 3; ++p)
                    for (int q = 0; q <= 3; ++q) CHECK(omega(t, a, p, b, q) == omega(t, b, q, a, p));
            }
        // F = 1/2 Omega_{1,1;1,1} - v^a Omega_{a,0;1,1} + 1/2 v^a v^b Omega_{a,0;b,0} modulo quadratic terms
        JetPoly F = omega(t, 1, 1, 1, 1) * Scalar(1, 2);
        for (int a = 1; a <= 2; ++a) {
            F -= JetPoly::v(a) * omega(t, a, 0, 1, 1);
            for (int b = 1; b <= 2; ++b) F += JetPoly::v(a) * JetPoly::v(b) * omega(t, a, 0, b, 0) * Scalar(1, 2);
        }
        JetPoly diff = F - m.F;
        for (const auto& [mono, c] : diff.terms()) {
            INFO(diff.str());
            CHECK(mono.factors().size() <= 2);
            for (const auto& [a, e] : mono.factors()) CHECK(a.kind == AtomKind::Jet);
        }
    }
}

TEST_CASE("tau symmetry") {
    for (auto m : {make_kdv(), make_cp1(), make_i2(Scalar(3))}) {
        INFO(m.name);
        ThetaTable t(m);
        for (int a = 1; a <= m.n; ++a)
            for (int b = 1; b <= m.n; ++b)
                for (int p = 0; p <= 3; ++p)
                    for (int q = 0; q <= 3; ++q) CHECK(tau_symmetry_residual(t, a, p, b, q).is_zero());
    }
}

TEST_CASE("bihamiltonian recursion") {
    ThetaTable k(make_kdv());
    for (int p = 0; p <= 3; ++p)
        for (const auto& r : check_bihamiltonian_recursion(k, p)) CHECK(all_zero(r));
    ThetaTable i(make_i2(Scalar(3)));
    for (int p = 0; p <= 2; ++p)
        for (const auto& r : check_bihamiltonian_recursion(i, p)) CHECK(all_zero(r));
    ThetaTable i2(make_i2(Scalar(5, 2)));
    for (const auto& r : check_bihamiltonian_recursion(i2, 2)) CHECK(all_zero(r));
    ThetaTable c(make_cp1());
    CHECK_THROWS_AS(check_bihamiltonian_recursion(c, 1), Degenerate);
}

TEST_CASE("conservation law completeness, randomized") {
    ThetaTable t(make_kdv());
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        JetPoly f, g, r;
        for (int d = 0; d <= 3; ++d) {
            f += vpow(1, Frac(d)) * Scalar(coef(rng));
            g += vpow(1, Frac(d)) * JetPoly::v(1, 1) * Scalar(coef(rng));
            r += vpow(1, Frac(d)) * Scalar(coef(rng));
        }
        bool extra = trial % 2 == 1;
        JetPoly h = f + dx(g) + (extra ? r * JetPoly::v(1, 1).pow(Frac(2)) : JetPoly());
        bool conserved = true;
        for (int p = 1; p <= 3; ++p) conserved = conserved && all_zero(conservation_residual(t, h, 1, p));
        auto red = integrate_by_parts(h).reduced;
        bool v_only = max_jet_order(red, 1) <= 0;
        INFO(h.str());
        CHECK(conserved == v_only);
    }
}
