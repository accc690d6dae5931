#include "../common/golden.hpp"
#include "frobtau/expr.hpp"
#include "frobtau/frobenius.hpp"
#include "frobtau/genus.hpp"
#include "frobtau/hierarchy.hpp"
#include "frobtau/kdv.hpp"
#include "frobtau/poisson.hpp"
#include "frobtau/polytropic.hpp"
#include "frobtau/tau.hpp"
#include "frobtau/virasoro.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ft;

namespace {

Scalar S(const char* s) { return parse_expression(s).constant_term(); }
JetPoly P(const char* s) { return parse_expression(s); }

bool all_zero(const std::vector<TauSeries>& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

// Collects mismatches; a criterion passes when none were recorded.
struct Ledger {
    std::vector<std::string> misses;
    int checks = 0;
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) misses.push_back(what);
    }
};

std::string mono_str(const golden::Mono& m) {
    std::ostringstream out;
    for (const auto& [a, p, e] : m) {
        out << "t[" << a << "," << p << "]";
        if (e > 1) out << "^" << e;
    }
    return out.str();
}

void criterion1(Ledger& L) {
    ThetaTable t(make_kdv());
    auto s = topological_solution(t, 4, 8);
    auto F = full_tau_log(t, s, 2);
    const std::vector<golden::Coeff>* tables[] = {&golden::wk_genus0(), &golden::wk_genus1(), &golden::wk_genus2()};
    L.expect(tables[0]->size() == 12 && tables[1]->size() == 11 && tables[2]->size() == 15, "table sizes");
    for (int g = 0; g < 3; ++g)
        for (const auto& c : *tables[g]) {
            Scalar got = F[g].coeff(c.mono);
            L.expect(got == S(c.value), "g=" + std::to_string(g) + " " + mono_str(c.mono) + ": computed " + got.str() +
                                            ", printed " + c.value);
        }
}

void criterion2(Ledger& L) {
    ThetaTable t(make_cp1());
    auto s = topological_solution(t, 3, 6);
    GenusEvaluator ge(s);
    auto F2 = ge.eval(genus2(make_cp1()));
    for (const auto& c : golden::cp1_genus2()) {
        Scalar got = F2.coeff(c.mono);
        L.expect(got == S(c.value), mono_str(c.mono) + ": computed " + got.str() + ", printed " + c.value);
    }
    for (const auto& c : golden::cp1_gw_genus2()) {
        std::vector<TimeIndex> ins;
        std::string name;
        for (auto [p, a] : c.insertions) {
            ins.push_back({a, p});
            name += "tau_" + std::to_string(p) + "(phi_" + std::to_string(a) + ")";
        }
        Scalar got = gw_invariant(t, 2, ins);
        L.expect(got == S(c.value), name + ": computed " + got.str() + ", printed " + c.value);
    }
}

void criterion3(Ledger& L) {
    auto k = genus2(make_kdv());
    JetPoly three =
        P("1/1152*v[1,4]/v[1,1]^2 - 7/1920*v[1,2]*v[1,3]/v[1,1]^3 + 1/360*v[1,2]^3/v[1,1]^4");
    L.expect(clear_denominators(to_flat_jets(k.expr) - three).is_zero(), "kdv three-term formula");
    const char* printed =
        "4*u[1,2]^3*U[1,2]/(5*u[1,1]^4) - 4*u[2,2]^3*U[1,2]/(5*u[2,1]^4) - u[1,2]*u[2,2]/(4*u[1,1]*u[2,1])"
        " + 3*u[1,2]/(4*u[1,1]^3)*(1/2*u[1,2]*u[2,1] - 7/5*u[1,3]*U[1,2])"
        " + 3*u[2,2]/(4*u[2,1]^3)*(1/2*u[2,2]*u[1,1] + 7/5*u[2,3]*U[1,2])"
        " + 1/(4*u[1,1]^2)*(33/10*u[1,2]^2 - 9/10*u[1,3]*u[2,1] + 1/10*u[1,2]*u[2,2] + u[1,4]*U[1,2])"
        " + 1/(4*u[2,1]^2)*(33/10*u[2,2]^2 - 9/10*u[2,3]*u[1,1] + 1/10*u[1,2]*u[2,2] - u[2,4]*U[1,2])"
        " - 1/(4*u[1,1])*(17/5*u[1,3] + 1/2*u[2,3]) - 1/(4*u[2,1])*(17/5*u[2,3] + 1/2*u[1,3])"
        " - 1/(10*U[1,2]^2)*(u[1,1]^3/u[2,1] + u[2,1]^3/u[1,1])"
        " - 1/U[1,2]^2*(u[1,1]^2 - 11/5*u[1,1]*u[2,1] + u[2,1]^2)"
        " + (u[1,2] - u[2,2])/U[1,2]*(u[2,1]/(5*u[1,1]) + u[1,1]/(5*u[2,1]) + 1)";
    auto c = genus2(make_cp1());
    L.expect(clear_denominators(c.expr * Scalar(576) - P(printed)).is_zero(), "cp1 printed 24^2 F2");
}

void criterion4(Ledger& L) {
    auto a = kdv_loop_solution();
    L.expect(kdv_loop_residual(a, 0).is_zero(), "order 0 residual");
    L.expect(kdv_loop_residual(a, 2).is_zero(), "order 2 residual");
    auto b = a;
    b.log_coeff = a.log_coeff * Scalar(2);
    L.expect(!kdv_loop_residual(b, 0).is_zero(), "perturbed log coefficient detected");
    b = a;
    b.kappa0 = a.kappa0 * Scalar(2);
    L.expect(!kdv_loop_residual(b, 0).is_zero(), "perturbed kappa0 detected");
    for (const auto& [m, c] : a.F[0].terms()) {
        b = a;
        b.F[0].add(m, c);
        L.expect(!kdv_loop_residual(b, 2).is_zero(), "perturbed F2 term " + m.str() + " detected");
    }
}

void criterion5(Ledger& L) {
    auto d1 = fixtures::delta_prime(1, {{Scalar(1)}});
    L.expect(jacobi_residual(d1).is_zero(), "jacobi delta'");
    for (auto c : {Scalar(-1, 4), Scalar(1, 8), Scalar(-1)})
        L.expect(jacobi_residual(fixtures::magri(c)).is_zero(), "jacobi magri c=" + c.str());
    for (const char* name : {"kdv", "cp1", "i2"}) {
        auto m = builtin_model(name, name == std::string("i2") ? std::optional<Scalar>(Scalar(3)) : std::nullopt);
        auto [p1, p2] = hydrodynamic_pencil(m);
        L.expect(jacobi_residual(p1).is_zero(), std::string("jacobi ") + name + " P1");
        L.expect(jacobi_residual(p2).is_zero(), std::string("jacobi ") + name + " P2");
        L.expect(compatibility_residual(p1, p2).is_zero(), std::string("compat ") + name);
    }
    for (auto n : {KdvNorm::Classical, KdvNorm::String})
        L.expect(compatibility_residual(d1, kdv_magri(n)).is_zero(), "compat delta' with magri");
    MiuraMap miura{1, {P("1/4*v[1]^2 + eps*v[1,1]")}};
    L.expect(miura_transform_bracket(fixtures::magri(Scalar(-1)), miura, 2) == d1, "miura magri -> delta'");
}

void criterion6(Ledger& L) {
    auto qm = kdv_quasimiura(4, KdvNorm::String);
    JetPoly printed = P("1/2*v[1]^2*v[1,1] + 1/12*eps^2*(2*v[1,1]*v[1,2] + v[1]*v[1,3]) + 1/240*eps^4*v[1,5]");
    L.expect(clear_denominators(quasimiura_flow_residual(qm, P("1/2*v[1]^2*v[1,1]"), printed, 4)).is_zero(),
             "printed t2 flow");
    L.expect(clear_denominators(quasimiura_flow_residual(qm, P("v[1]*v[1,1]"), kdv_flow(1, KdvNorm::String), 4)).is_zero(),
             "t1 flow");
    auto p1 = fixtures::delta_prime(1, {{Scalar(1)}});
    L.expect(quasimiura_bracket_residual(qm, p1, p1, 4).is_zero(), "first bracket");
    L.expect(quasimiura_bracket_residual(qm, fixtures::magri(Scalar(0)), kdv_magri(KdvNorm::String), 4).is_zero(),
             "second bracket");
}

void criterion7(Ledger& L) {
    for (int k = 0; k <= 3; ++k)
        L.expect(kdv_lenard_residual(k, KdvNorm::Classical).is_zero(), "lenard k=" + std::to_string(k));
    ThetaTable i2(make_i2(Scalar(3)));
    auto mu = i2.model().mu;
    L.expect(mu.size() == 2 && mu[0] == Scalar(-1, 6) && mu[1] == Scalar(1, 6), "i2(3) spectrum");
    for (int p = 0; p <= 2; ++p)
        for (const auto& r : check_bihamiltonian_recursion(i2, p))
            for (const auto& x : r) L.expect(x.is_zero(), "i2 recursion p=" + std::to_string(p));
    ThetaTable c(make_cp1());
    bool degenerate = false;
    try {
        check_bihamiltonian_recursion(c, 1);
    } catch (const Degenerate&) {
        degenerate = true;
    }
    L.expect(degenerate, "cp1 reports Degenerate");
}

void criterion8(Ledger& L) {
    {
        ThetaTable t(make_kdv());
        auto s = topological_solution(t, 4, 7);
        auto F = full_tau_log(t, s, 1);
        L.expect(all_zero(trr0_residuals(t.model(), F[0], 4)), "kdv trr0 through degree 4");
        L.expect(all_zero(trr1_residuals(t.model(), F[0], F[1], 4)), "kdv trr1 through degree 4");
    }
    {
        ThetaTable t(make_cp1());
        auto s = topological_solution(t, 3, 6);
        L.expect(all_zero(trr0_residuals(t.model(), genus0_free_energy(t, s), 3)), "cp1 trr0 through degree 3");
    }
    auto cp1 = make_cp1();
    L.expect(getzler_residual(cp1, P("-1/24*v[2]")).is_zero(), "getzler holds for -v2/24");
    L.expect(!getzler_residual(cp1, P("-1/12*v[2]")).is_zero(), "getzler fails for -v2/12");
}

void criterion9(Ledger& L) {
    auto kdv = make_kdv();
    for (int i = -1; i <= 3; ++i)
        for (int j = -1; j <= 3; ++j) {
            auto r = commutator_check(kdv, i, j, 6, 5);
            L.expect(r.monomials > 0 && r.failures == 0,
                     "commutator [" + std::to_string(i) + "," + std::to_string(j) + "]");
        }
    ThetaTable t(kdv);
    auto s = topological_solution(t, 4, 8);
    auto F = full_tau_log(t, s, 2);
    for (int m = -1; m <= 2; ++m) {
        auto R = constraint_residual(kdv, m, F, {{{1, 1}, Scalar(1)}});
        L.expect(R.by_genus.size() == 3, "constraint through genus 2");
        for (auto [g, key] : R.failures())
            L.expect(false, "L_" + std::to_string(m) + " genus " + std::to_string(g) + " " + R.by_genus[g].key_str(key));
    }
}

void criterion10(Ledger& L) {
    const char* a[] = {"(36 + 144*k - 59*k^2 + 19*k^3)/(5760*k^3)",
                       "(60 + 176*k + 433*k^2 - 182*k^3 + 17*k^4)/(5760*k^3)",
                       "(6 - 19*k - 11*k^2 - 4*k^3)/(1440*k^3)",
                       "(-6 - 5*k + 13*k^2)/(1440*k^3)",
                       "(-42 + 13*k - 7*k^2)/(2880*k^2)",
                       "(-36 - 72*k - 245*k^2 - 61*k^3 + 30*k^4)/(2880*k^2)",
                       "(6 + 5*k + 15*k^2 + 5*k^3 + 5*k^4)/(1440*k^2)",
                       "(1)/(120*k)",
                       "(2 + 5*k)/(240)"};
    const char* b[] = {"(108 + 192*k - 97*k^2 + 17*k^3)/(2880*k^3)",
                       "(-18 - 75*k + 47*k^2 - 10*k^3)/(1440*k^3)",
                       "(-6 - 17*k + 5*k^2 - 2*k^3)/(288*k^3)",
                       "(6 - 4*k + k^2)/(180*k^2)",
                       "(6 + k + k^2)/(720*k^2)",
                       "(6 + k + k^2)/(720*k^2)",
                       "(-1)/(360*k)"};
    auto ta = polytropic_a();
    auto tb = polytropic_b();
    L.expect(ta.size() == 9 && tb.size() == 7, "16 table entries");
    for (std::size_t i = 0; i < ta.size() && i < 9; ++i) L.expect(ta[i].str() == a[i], "a" + std::to_string(i + 1));
    for (std::size_t i = 0; i < tb.size() && i < 7; ++i) L.expect(tb[i].str() == b[i], "b" + std::to_string(i + 1));
    auto s = polytropic_deformation(Scalar(2));
    for (const auto& f : s.flux) L.expect(eps_part(f, 4).is_zero(), "kappa=2 eps^4 terms vanish");
    for (int e : {0, 2}) {
        auto c = polytropic_coupling(s, e);
        for (std::size_t i = 0; i < c.size(); ++i)
            L.expect(c[i].is_zero(), "u" + std::string(i == 0 ? "+" : "-") + " decoupling at eps^" + std::to_string(e) +
                                         ": cross term " + c[i].str());
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Ledger&)>>> criteria = {
        {"witten-kontsevich table", criterion1},
        {"cp1 genus two expansion and invariants", criterion2},
        {"genus two specializations", criterion3},
        {"loop equation", criterion4},
        {"poisson suite", criterion5},
        {"quasi-miura pushforward", criterion6},
        {"bihamiltonian recursion", criterion7},
        {"trr and getzler", criterion8},
        {"virasoro", criterion9},
        {"polytropic deformation", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Ledger L;
        auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            criteria[i].second(L);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.empty() && L.misses.empty();
        failed += !ok;
        std::printf("%s %2zu %s (%d checks, %.1fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, L.checks, secs);
        if (!error.empty()) std::printf("     error: %s\n", error.c_str());
        for (const auto& m : L.misses) std::printf("     %s\n", m.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
