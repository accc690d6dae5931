#include "frobtau/hierarchy.hpp"

#include <set>

namespace ft {

namespace {

// f with d_gamma f = G[gamma-1]; throws when G is not exact or not integrable here.
JetPoly potential(const std::vector<JetPoly>& G) {
    JetPoly f;
    for (int g = 1; g <= static_cast<int>(G.size()); ++g) {
        JetPoly rest = G[g - 1] - partial(f, Atom::jet(g, 0));
        for (int h = 1; h < g; ++h)
            if (!partial(rest, Atom::jet(h, 0)).is_zero()) throw InvalidModel("theta recursion: gradient is not closed");
        auto prim = integrate_in(rest, g);
        if (!prim) throw InvalidModel("theta recursion: no elementary primitive");
        f += *prim;
    }
    return f;
}

bool is_half_integer(const Scalar& s) {
    if (!s.is_rational()) return false;
    mpq_class q = s.rational_value() - mpq_class(1, 2);
    q.canonicalize();
    return q.get_den() == 1;
}

}  // namespace

ThetaTable::ThetaTable(FrobeniusModel m) : m_(std::move(m)) {
    int n = m_.n;
    c_ = structure_constants(m_);
    U_.assign(n, std::vector<JetPoly>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) U_[a][b] += m_.euler[e] * c_[e][b][a];
    std::vector<JetPoly> l0(n);
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e)
            if (!m_.eta[a][e].is_zero()) l0[a] += JetPoly::v(e + 1) * m_.eta[a][e];
    levels_.push_back(l0);
}

void ThetaTable::closed_form_cp1(int p) {
    // theta_1(z) = -2 e^{z v1} sum (H_m - v2/2) e^{m v2} z^{2m}/(m!)^2
    // theta_2(z) = (e^{z v1} sum e^{m v2} z^{2m}/(m!)^2 - 1)/z
    std::vector<JetPoly> level(2);
    mpq_class H = 0;
    for (int m = 0; 2 * m <= p + 1; ++m) {
        if (m > 0) H += mpq_class(1, m);
        mpq_class mf2 = factorial(m) * factorial(m);
        JetPoly e = m == 0 ? JetPoly(1) : JetPoly::expv(2, Frac(m));
        if (2 * m <= p) {
            int r = p - 2 * m;
            JetPoly coef = (JetPoly(Scalar(H)) - JetPoly::v(2) * Scalar(1, 2)) * Scalar(mpq_class(-2) / (mf2 * factorial(r)));
            level[0] += coef * e * JetPoly::v(1).pow(Frac(r));
        }
        int r = p + 1 - 2 * m;
        level[1] += e * JetPoly::v(1).pow(Frac(r)) * Scalar(mpq_class(1) / (mf2 * factorial(r)));
    }
    levels_.push_back(level);
}

void ThetaTable::extend_to(int target) {
    int n = m_.n;
    while (static_cast<int>(levels_.size()) <= target) {
        int p = static_cast<int>(levels_.size()) - 1;
        if (m_.builtin == Builtin::CP1) {
            closed_form_cp1(p + 1);
            continue;
        }
        const auto& cur = levels_[p];
        std::vector<JetPoly> base(n);
        for (int b = 0; b < n; ++b) {
            std::vector<JetPoly> g(n);
            for (int mu = 0; mu < n; ++mu) {
                std::vector<JetPoly> H(n);
                for (int l = 0; l < n; ++l)
                    for (int nu = 0; nu < n; ++nu)
                        if (!c_[l][mu][nu].is_zero()) H[l] += c_[l][mu][nu] * partial(cur[b], Atom::jet(nu + 1, 0));
                g[mu] = potential(H);
            }
            base[b] = potential(g);
        }
        auto Theta = [&](const std::vector<JetPoly>& lev) {
            JetMatrix T(n, std::vector<JetPoly>(n));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int e = 0; e < n; ++e)
                        if (!m_.eta_inv[a][e].is_zero()) T[a][b] += partial(lev[b], Atom::jet(e + 1, 0)) * m_.eta_inv[a][e];
            return T;
        };
        JetMatrix T0 = Theta(base), Tp = Theta(cur);
        ScalarMatrix Ahat(n, std::vector<Scalar>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                JetPoly rem;
                for (int e = 0; e < n; ++e) rem += U_[a][e] * Tp[e][b];
                for (int k = 1; k <= p + 1; ++k) {
                    ScalarMatrix Rk = m_.R_part(k);
                    JetMatrix Tk = Theta(levels_[p - k + 1]);
                    for (int e = 0; e < n; ++e)
                        if (!Rk[e][b].is_zero()) rem -= Tk[a][e] * Rk[e][b];
                }
                Scalar factor = Scalar(p + 1) + m_.mu[b] - m_.mu[a];
                rem -= T0[a][b] * factor;
                if (!rem.is_constant()) throw InvalidModel("theta normalization: non-constant defect");
                if (factor.is_zero())
                    throw ResonanceUnresolved("normalization is singular at level " + std::to_string(p + 1) + " entry (" +
                                              std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
                Ahat[a][b] = rem.constant_term() * factor.inverse();
            }
        std::vector<JetPoly> next(n);
        for (int b = 0; b < n; ++b) {
            next[b] = base[b];
            for (int g = 0; g < n; ++g) {
                Scalar A;
                for (int a = 0; a < n; ++a) A += m_.eta[g][a] * Ahat[a][b];
                if (!A.is_zero()) next[b] += JetPoly::v(g + 1) * A;
            }
        }
        // d_1 theta_{p+1} = theta_p fixes the constants of level p
        for (int b = 0; b < n; ++b) {
            JetPoly d1 = partial(next[b], Atom::jet(1, 0));
            JetPoly diff = d1 - levels_[p][b];
            if (!diff.is_constant()) throw InvalidModel("theta recursion: d_1 theta inconsistent");
            if (p == 0 && !diff.is_zero()) throw InvalidModel("theta recursion: unity vector field is not flat");
            levels_[p][b] = d1;
        }
        levels_.push_back(next);
    }
}

const JetPoly& ThetaTable::theta(int alpha, int p) {
    if (alpha < 1 || alpha > m_.n || p < 0) throw std::out_of_range("theta index");
    extend_to(p + 1);
    return levels_[p][alpha - 1];
}

JetPoly ThetaTable::grad(int alpha, int p, int gamma) { return partial(theta(alpha, p), Atom::jet(gamma, 0)); }

JetPoly theta(const FrobeniusModel& m, int alpha, int p) {
    ThetaTable t(m);
    return t.theta(alpha, p);
}

std::vector<JetPoly> flow_rhs(ThetaTable& t, int alpha, int p) {
    const auto& m = t.model();
    std::vector<JetPoly> out(m.n);
    for (int b = 0; b < m.n; ++b)
        for (int g = 0; g < m.n; ++g)
            if (!m.eta_inv[b][g].is_zero()) out[b] += dx(t.grad(alpha, p + 1, g + 1)) * m.eta_inv[b][g];
    return out;
}

JetPoly omega(ThetaTable& t, int alpha, int p, int beta, int q) {
    const auto& m = t.model();
    auto N = [&](int r, int s) {
        JetPoly out;
        for (int l = 0; l < m.n; ++l)
            for (int mu = 0; mu < m.n; ++mu)
                if (!m.eta_inv[l][mu].is_zero()) out += t.grad(alpha, r, l + 1) * t.grad(beta, s, mu + 1) * m.eta_inv[l][mu];
        return out;
    };
    JetPoly out;
    for (int k = 0; k <= q; ++k) {
        JetPoly term = N(p + 1 + k, q - k);
        out += (k % 2) ? -term : term;
    }
    return out;
}

JetPoly evolution_derivative(const JetPoly& f, const std::vector<JetPoly>& X) {
    std::set<std::pair<int, int>> vars;
    for (const auto& [mono, c] : f.terms())
        for (const auto& [a, k] : mono.factors()) {
            if (a.kind == AtomKind::Jet) vars.insert({a.a, a.b});
            if (a.kind == AtomKind::Exp) vars.insert({a.a, 0});
        }
    JetPoly out;
    for (auto [d, s] : vars) {
        if (d < 1 || d > static_cast<int>(X.size())) continue;
        out += partial(f, Atom::jet(d, s)) * dx(X[d - 1], s);
    }
    return out;
}

std::vector<JetPoly> check_flow_commutativity(ThetaTable& t, std::pair<int, int> a, std::pair<int, int> b) {
    auto X = flow_rhs(t, a.first, a.second);
    auto Y = flow_rhs(t, b.first, b.second);
    std::vector<JetPoly> out;
    for (std::size_t g = 0; g < X.size(); ++g) out.push_back(evolution_derivative(X[g], Y) - evolution_derivative(Y[g], X));
    return out;
}

std::vector<std::vector<JetPoly>> check_bihamiltonian_recursion(ThetaTable& t, int p) {
    const auto& m = t.model();
    for (const auto& mu : m.mu)
        if (is_half_integer(mu)) throw Degenerate("recursion operator is degenerate: mu has a half-integer eigenvalue");
    int n = m.n;
    auto form = intersection_form(m);
    auto P1 = [&](int alpha, int q) {
        std::vector<JetPoly> out(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!m.eta_inv[a][b].is_zero()) out[a] += dx(t.grad(alpha, q, b + 1)) * m.eta_inv[a][b];
        return out;
    };
    std::vector<std::vector<JetPoly>> res;
    for (int alpha = 1; alpha <= n; ++alpha) {
        std::vector<JetPoly> r(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                JetPoly w = t.grad(alpha, p, b + 1);
                r[a] += form.g[a][b] * dx(w);
                for (int c = 0; c < n; ++c) r[a] += form.gamma[a][b][c] * JetPoly::v(c + 1, 1) * w;
            }
        auto main = P1(alpha, p + 1);
        Scalar coef = Scalar(p) + m.mu[alpha - 1] + Scalar(1, 2);
        for (int a = 0; a < n; ++a) r[a] -= main[a] * coef;
        for (int k = 1; k <= p + 1; ++k) {
            ScalarMatrix Rk = m.R_part(k);
            for (int beta = 1; beta <= n; ++beta) {
                if (Rk[beta - 1][alpha - 1].is_zero()) continue;
                auto term = P1(beta, p + 1 - k);
                for (int a = 0; a < n; ++a) r[a] -= term[a] * Rk[beta - 1][alpha - 1];
            }
        }
        res.push_back(r);
    }
    return res;
}

JetPoly tau_symmetry_residual(ThetaTable& t, int alpha, int p, int beta, int q) {
    auto X = flow_rhs(t, beta, q);
    return evolution_derivative(t.theta(alpha, p), X) - dx(omega(t, alpha, p, beta, q));
}

std::vector<JetPoly> conservation_residual(ThetaTable& t, const JetPoly& h, int alpha, int p) {
    auto X = flow_rhs(t, alpha, p);
    JetPoly dh = evolution_derivative(h, X);
    std::vector<JetPoly> out;
    for (int a = 1; a <= t.model().n; ++a) out.push_back(variational(dh, a));
    return out;
}

}  // namespace ft
