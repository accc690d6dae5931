#include "frobtau/kdv.hpp"

#include "frobtau/hierarchy.hpp"
#include "frobtau/tau.hpp"

#include <sstream>
#include <stdexcept>

namespace ft {

namespace {

JetPoly u(int s = 0) { return JetPoly::v(1, s); }

Scalar imag_unit() { return Scalar::generator(generator_index("i")); }

Scalar binomial(int n, int k) {
    Scalar r(1);
    for (int i = 1; i <= k; ++i) r = r * Scalar(n - k + i, i);
    return r;
}

long double_factorial(int n) {
    long r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

}  // namespace

JetPoly kdv_normalize(const JetPoly& p, KdvNorm norm) {
    return norm == KdvNorm::Classical ? p : rescale_eps2(p, Scalar(-1, 2));
}

std::vector<JetPoly> riccati_chi(int max_m) {
    std::vector<JetPoly> chi(max_m + 1);
    if (max_m < 1) return chi;
    chi[1] = u() * Scalar(-1, 2);
    JetPoly ie = JetPoly::eps() * imag_unit();
    for (int m = 1; m < max_m; ++m) {
        JetPoly next = ie * dx(chi[m]);
        for (int a = 1; a < m; ++a) next -= chi[a] * chi[m - a];
        chi[m + 1] = next * Scalar(1, 2);
    }
    return chi;
}

JetPoly kdv_integral_density(int k) {
    if (k < -1) throw std::invalid_argument("integral index must be >= -1");
    return riccati_chi(2 * k + 3)[2 * k + 3] * Scalar(-4);
}

JetPoly kdv_hamiltonian_density(int k, KdvNorm norm) {
    if (k < -1) throw std::invalid_argument("hamiltonian index must be >= -1");
    Scalar c(1);
    for (int i = 1; i <= k + 1; ++i) c = c * Scalar(2, 2 * i + 1);
    return kdv_normalize(variational(kdv_integral_density(k + 1), 1) * c, norm);
}

JetPoly kdv_hamiltonian_density_generating(int k, KdvNorm norm) {
    if (k < -1) throw std::invalid_argument("hamiltonian index must be >= -1");
    int K = k + 2;
    auto chi = riccati_chi(2 * K + 1);
    // X = sum_j chi_{2j+1} mu^{j+1}, mu = 1/lambda; w = 1/(1+X) up to mu^K
    std::vector<JetPoly> X(K + 1), w(K + 1), pw(K + 1);
    for (int j = 0; j + 1 <= K; ++j) X[j + 1] = chi[2 * j + 1];
    w[0] = JetPoly(1);
    pw[0] = JetPoly(1);
    for (int n = 1; n <= K; ++n) {
        std::vector<JetPoly> next(K + 1);
        for (int a = 0; a <= K; ++a)
            for (int b = 1; a + b <= K; ++b)
                if (!pw[a].is_zero() && !X[b].is_zero()) next[a + b] -= pw[a] * X[b];
        pw = next;
        for (int a = 0; a <= K; ++a) w[a] += pw[a];
    }
    Scalar c = Scalar(1L << K, double_factorial(2 * K - 1));
    return kdv_normalize(w[K] * c, norm);
}

JetPoly kdv_gradient(int k, KdvNorm norm) {
    if (k == -1) return JetPoly(1);
    return kdv_hamiltonian_density(k - 1, norm);
}

JetPoly kdv_flow(int k, KdvNorm norm) {
    if (k < 0) throw std::invalid_argument("flow index must be >= 0");
    return dx(kdv_gradient(k, norm));
}

JetPoly kdv_tau_symmetry_residual(int i, int j, KdvNorm norm) {
    JetPoly a = evolution_derivative(kdv_gradient(i, norm), {kdv_flow(j, norm)});
    JetPoly b = evolution_derivative(kdv_gradient(j, norm), {kdv_flow(i, norm)});
    return a - b;
}

LocalBivector kdv_magri(KdvNorm norm) {
    return fixtures::magri(norm == KdvNorm::Classical ? Scalar(-1, 4) : Scalar(1, 8));
}

JetPoly kdv_lenard_residual(int k, KdvNorm norm) {
    JetPoly lhs = apply_op(kdv_magri(norm).op, {kdv_gradient(k - 1, norm)})[0];
    return lhs - dx(kdv_gradient(k, norm)) * Scalar(2 * k + 1, 2);
}

JetPoly kdv_lenard_residual_integrals(int k) {
    auto grad = [](int j) { return variational(kdv_integral_density(j), 1); };
    JetPoly lhs = apply_op(kdv_magri(KdvNorm::Classical).op, {grad(k - 1)})[0];
    return lhs - dx(grad(k));
}

MiuraMap kdv_quasimiura(int order, KdvNorm norm) {
    if (order != 2 && order != 4) throw std::invalid_argument("quasi-Miura order must be 2 or 4");
    JetPoly v1inv = u(1).pow(Frac(-1));
    JetPoly F = u() + JetPoly::eps(2) * dx(u(2) * v1inv) * Scalar(-1, 12);
    if (order == 4) {
        JetPoly g = u(4) * u(1).pow(Frac(-2)) * Scalar(1, 288) - u(2) * u(3) * u(1).pow(Frac(-3)) * Scalar(7, 480) +
                    u(2).pow(Frac(3)) * u(1).pow(Frac(-4)) * Scalar(1, 90);
        F += JetPoly::eps(4) * dx(g, 2);
    }
    MiuraMap m;
    m.n = 1;
    m.F = {kdv_normalize(F, norm)};
    return m;
}

JetPoly quasimiura_flow_residual(const MiuraMap& qm, const JetPoly& v_flow, const JetPoly& u_flow, int order) {
    JetPoly pushed = evolution_derivative(qm.F[0], {v_flow});
    JetPoly target = substitute_jets(u_flow, qm.F, order);
    return eps_truncate(pushed - target, order);
}

DiffOp quasimiura_bracket_residual(const MiuraMap& qm, const LocalBivector& p_v, const LocalBivector& p_u, int order) {
    DiffOp L = linearization(qm);
    DiffOp pushed = compose(compose(L, p_v.op, order), adjoint(L), order);
    DiffOp target;
    target.n = p_u.n();
    for (const auto& [k, p] : p_u.op.c)
        target.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), substitute_jets(p, qm.F, order));
    return op_truncate(op_sum(pushed, op_scale(target, Scalar(-1))), order);
}

JetPoly clear_denominators(const JetPoly& p) {
    std::map<Atom, Frac> low;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors())
            if (k < Frac(0) && a.kind != AtomKind::Exp) {
                auto it = low.find(a);
                if (it == low.end() || k < it->second) low[a] = k;
            }
    Monomial mult;
    for (const auto& [a, k] : low) mult = mult.times(a, -k);
    return p * JetPoly(mult);
}

bool LoopResidual::is_zero() const {
    if (!lambda2.is_zero()) return false;
    for (const auto& [p, c] : poles)
        if (!c.is_zero()) return false;
    return true;
}

std::string LoopResidual::str() const {
    std::ostringstream os;
    os << "lambda^-2: " << lambda2.str() << "\n";
    for (const auto& [p, c] : poles) os << "(v-lambda)^-" << p << ": " << c.str() << "\n";
    return os.str();
}

namespace {

struct LoopTerms {
    const LoopAnsatz& a;

    // eps^e coefficient of Delta F
    const JetPoly* part(int e) const {
        if (e < 2 || e % 2) return nullptr;
        std::size_t g = static_cast<std::size_t>(e / 2 - 1);
        return g < a.F.size() ? &a.F[g] : nullptr;
    }
    int top(int e) const {
        if (e == 0) return 1;
        const JetPoly* f = part(e);
        return f ? std::max(0, max_jet_order(*f, 1)) : -1;
    }
    JetPoly d1(int k, int e) const {
        if (e == 0) return k == 1 ? JetPoly(a.log_coeff) * u(1).pow(Frac(-1)) : JetPoly();
        const JetPoly* f = part(e);
        return f ? partial(*f, Atom::jet(1, k)) : JetPoly();
    }
    JetPoly d2(int k, int l, int e) const {
        if (e == 0) return k == 1 && l == 1 ? JetPoly(-a.log_coeff) * u(1).pow(Frac(-2)) : JetPoly();
        const JetPoly* f = part(e);
        return f ? partial(partial(*f, Atom::jet(1, k)), Atom::jet(1, l)) : JetPoly();
    }
};

}  // namespace

LoopResidual kdv_loop_residual(const LoopAnsatz& a, int eps_order) {
    if (eps_order < 0 || eps_order % 2) throw std::invalid_argument("loop order must be even and non-negative");
    LoopTerms t{a};
    JetPoly sigma = JetPoly::atom(Atom::sigma(1));
    JetPoly s2 = sigma * sigma, s4 = s2 * s2;
    auto ds = [&](int k) { return dx(sigma, k); };

    JetPoly res;
    int e = eps_order;
    for (int r = 0; r <= t.top(e); ++r) {
        JetPoly f = t.d1(r, e);
        if (f.is_zero()) continue;
        JetPoly kern = dx(s2, r);
        for (int k = 1; k <= r; ++k) kern += ds(k - 1) * ds(r - k + 1) * binomial(r, k);
        res += f * kern;
    }
    if (e == 0) {
        res += s4 * Scalar(1, 16);
    } else {
        int ep = e - 2;
        int R = t.top(ep);
        for (int k = 0; k <= R; ++k)
            for (int l = 0; l <= R; ++l) {
                JetPoly c = t.d2(k, l, ep);
                for (int x = 0; x <= ep; x += 2) c += t.d1(k, x) * t.d1(l, ep - x);
                if (!c.is_zero()) res -= c * ds(k + 1) * ds(l + 1) * Scalar(1, 2);
            }
        for (int k = 0; k <= R; ++k) {
            JetPoly f = t.d1(k, ep);
            if (!f.is_zero()) res += f * dx(s4, k + 2) * Scalar(1, 16);
        }
    }

    LoopResidual out;
    out.lambda2 = e == 0 ? a.kappa0 - Scalar(1, 16) : Scalar();
    Atom sa = Atom::sigma(1);
    for (const auto& [m, c] : res.terms()) {
        Frac k = m.power(sa);
        if (k.den != 1 || k.num % 2) throw std::logic_error("odd power of (v - lambda)^{-1/2} in the loop residual");
        out.poles[static_cast<int>(k.num / 2)].add(m.without(sa), c);
    }
    for (auto it = out.poles.begin(); it != out.poles.end();)
        it = it->second.is_zero() ? out.poles.erase(it) : std::next(it);
    return out;
}

LoopAnsatz kdv_loop_solution() {
    LoopAnsatz a;
    a.log_coeff = Scalar(1, 24);
    a.kappa0 = Scalar(1, 16);
    a.F.push_back(u(4) * u(1).pow(Frac(-2)) * Scalar(1, 1152) - u(2) * u(3) * u(1).pow(Frac(-3)) * Scalar(7, 1920) +
                  u(2).pow(Frac(3)) * u(1).pow(Frac(-4)) * Scalar(1, 360));
    return a;
}

std::vector<TauSeries> wp_series(int degree) {
    ThetaTable t(make_kdv());
    std::map<TimeIndex, Scalar> c;
    Scalar fact(1);
    for (int p = 1; p <= degree + 1; ++p) {
        if (p > 1) fact = fact * Scalar(p - 1);
        c[{1, p}] = fact.inverse() * Scalar(p % 2 ? 1 : -1);
    }
    HierarchySolution s = hodograph_solution(t, c, 0, degree);
    JetPoly F = kdv_quasimiura(4, KdvNorm::String).F[0];
    SeriesEvaluator ev(s.v);
    std::vector<TauSeries> out;
    for (int e = 0; e <= 4; e += 2) out.push_back(ev.eval(eps_part(F, e)));
    return out;
}

}  // namespace ft
