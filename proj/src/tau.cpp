#include "frobtau/tau.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ft {

namespace {

Scalar eval_at(const JetPoly& p, const std::vector<Scalar>& base) {
    Scalar out;
    for (const auto& [m, c] : p.terms()) {
        Scalar term = c;
        for (const auto& [a, k] : m.factors()) {
            if (a.kind == AtomKind::Jet && a.b == 0) {
                term = term * scalar_pow(base.at(a.a - 1), k);
            } else if (a.kind == AtomKind::Exp) {
                if (!base.at(a.a - 1).is_zero()) throw std::domain_error("exponential at a nonzero base point");
            } else {
                throw std::domain_error("cannot evaluate " + atom_str(a) + " at a point");
            }
        }
        out += term;
    }
    return out;
}

// upper-index gradient eta^{b g} d_g theta_{alpha,p}
std::vector<JetPoly> upper_grad(ThetaTable& t, int alpha, int p) {
    const auto& m = t.model();
    std::vector<JetPoly> out(m.n);
    for (int b = 0; b < m.n; ++b)
        for (int g = 0; g < m.n; ++g)
            if (!m.eta_inv[b][g].is_zero()) out[b] += t.grad(alpha, p, g + 1) * m.eta_inv[b][g];
    return out;
}

std::set<TimeIndex> time_indices(const HierarchySolution& s) {
    std::set<TimeIndex> out;
    for (int p = 0; p <= s.bounds.levels; ++p)
        for (int a = 1; a <= s.bounds.n; ++a) out.insert({a, p});
    for (const auto& [k, c] : s.c)
        if (!c.is_zero()) out.insert(k);
    return out;
}

TauSeries shifted_time(const HierarchySolution& s, TimeIndex i) {
    TauSeries t(s.bounds);
    if (i.second <= s.bounds.levels) t = TauSeries::variable(s.bounds, i.first, i.second);
    if (auto it = s.c.find(i); it != s.c.end()) t -= TauSeries(s.bounds, it->second);
    return t;
}

// derivative cache keyed by a sorted multiset of time indices
class Derivatives {
public:
    explicit Derivatives(const TauSeries& f) { cache_[{}] = f; }
    const TauSeries& get(std::vector<TimeIndex> idx) {
        std::sort(idx.begin(), idx.end());
        if (auto it = cache_.find(idx); it != cache_.end()) return it->second;
        TimeIndex last = idx.back();
        std::vector<TimeIndex> rest(idx.begin(), idx.end() - 1);
        TauSeries d = get(rest).d(last.first, last.second);
        return cache_.emplace(idx, std::move(d)).first->second;
    }

private:
    std::map<std::vector<TimeIndex>, TauSeries> cache_;
};

}  // namespace

HierarchySolution hodograph_solution(ThetaTable& t, const std::map<TimeIndex, Scalar>& c, int levels, int degree,
                                     std::vector<Scalar> base) {
    const auto& m = t.model();
    int n = m.n;
    if (base.empty()) base.assign(n, Scalar());
    if (static_cast<int>(base.size()) != n) throw std::invalid_argument("base point has the wrong dimension");

    std::vector<JetPoly> G(n);
    for (const auto& [idx, cc] : c) {
        if (cc.is_zero()) continue;
        auto g = upper_grad(t, idx.first, idx.second);
        for (int b = 0; b < n; ++b) G[b] += g[b] * cc;
    }
    for (int b = 0; b < n; ++b)
        if (!eval_at(G[b], base).is_zero()) throw std::invalid_argument("base point does not solve the seed equation");
    ScalarMatrix M(n, std::vector<Scalar>(n));
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) M[b][a] = eval_at(partial(G[b], Atom::jet(a + 1, 0)), base);
    ScalarMatrix Minv;
    try {
        Minv = invert_scalar_matrix(M);
    } catch (const InvalidModel&) {
        throw NonMonotoneSeed("linearized seed is singular at the base point");
    }

    HierarchySolution s;
    s.model = m;
    s.c = c;
    s.base = base;
    s.bounds = SeriesBounds{n, levels, degree, 0, 0};
    std::vector<std::pair<TimeIndex, std::vector<JetPoly>>> grads;
    for (int p = 0; p <= levels; ++p)
        for (int a = 1; a <= n; ++a) grads.push_back({{a, p}, upper_grad(t, a, p)});

    for (int b = 0; b < n; ++b) s.v.push_back(TauSeries(s.bounds, base[b]));
    for (int it = 0; it <= degree; ++it) {
        SeriesEvaluator ev(s.v);
        std::vector<TauSeries> rhs(n, TauSeries(s.bounds));
        for (const auto& [idx, g] : grads)
            for (int b = 0; b < n; ++b)
                if (!g[b].is_zero()) rhs[b] += ev.eval(g[b]).times_var(idx.first, idx.second);
        for (int b = 0; b < n; ++b) {
            TauSeries nl = ev.eval(G[b]);
            for (int a = 0; a < n; ++a)
                if (!M[b][a].is_zero()) nl -= (s.v[a] - TauSeries(s.bounds, base[a])) * M[b][a];
            rhs[b] -= nl;
        }
        std::vector<TauSeries> next;
        for (int b = 0; b < n; ++b) {
            TauSeries w(s.bounds, base[b]);
            for (int a = 0; a < n; ++a)
                if (!Minv[b][a].is_zero()) w += rhs[a] * Minv[b][a];
            next.push_back(w.with_degree(degree));
        }
        s.v = std::move(next);
    }
    return s;
}

HierarchySolution topological_solution(ThetaTable& t, int levels, int degree) {
    return hodograph_solution(t, {{{1, 1}, Scalar(1)}}, levels, degree);
}

std::vector<TauSeries> hodograph_residual(ThetaTable& t, const HierarchySolution& s) {
    int n = s.bounds.n;
    std::vector<TauSeries> out(n, TauSeries(s.bounds));
    SeriesEvaluator ev(s.v);
    for (TimeIndex i : time_indices(s)) {
        auto g = upper_grad(t, i.first, i.second);
        TauSeries ti = shifted_time(s, i);
        for (int b = 0; b < n; ++b)
            if (!g[b].is_zero()) out[b] += ev.eval(g[b]) * ti;
    }
    return out;
}

TauSeries genus0_free_energy(ThetaTable& t, const HierarchySolution& s) {
    SeriesEvaluator ev(s.v);
    auto idx = time_indices(s);
    std::vector<TimeIndex> I(idx.begin(), idx.end());
    std::vector<TauSeries> tt;
    for (auto i : I) tt.push_back(shifted_time(s, i));
    TauSeries F(s.bounds);
    for (std::size_t i = 0; i < I.size(); ++i)
        for (std::size_t j = i; j < I.size(); ++j) {
            JetPoly om = omega(t, I[i].first, I[i].second, I[j].first, I[j].second);
            if (om.is_zero()) continue;
            TauSeries term = ev.eval(om) * (tt[i] * tt[j]);
            F += (i == j) ? term * Scalar(1, 2) : term;
        }
    return F.with_degree(s.bounds.degree);
}

std::vector<TauSeries> trr0_residuals(const FrobeniusModel& m, const TauSeries& F0, int degree) {
    const auto& b = F0.bounds();
    if (b.degree - 3 < degree) throw TruncationInsufficient("genus-zero recursion needs F0 to degree + 3");
    Derivatives D(F0);
    std::vector<TimeIndex> all;
    for (int p = 0; p <= b.levels; ++p)
        for (int a = 1; a <= b.n; ++a) all.push_back({a, p});
    std::vector<TauSeries> out;
    for (TimeIndex i : all) {
        if (i.second == 0) continue;
        TimeIndex lower{i.first, i.second - 1};
        for (std::size_t j = 0; j < all.size(); ++j)
            for (std::size_t k = j; k < all.size(); ++k) {
                TauSeries r = D.get({i, all[j], all[k]});
                for (int nu = 1; nu <= b.n; ++nu)
                    for (int mu = 1; mu <= b.n; ++mu) {
                        const Scalar& e = m.eta_inv[nu - 1][mu - 1];
                        if (e.is_zero()) continue;
                        r -= D.get({lower, {nu, 0}}) * D.get({{mu, 0}, all[j], all[k]}) * e;
                    }
                out.push_back(r.with_degree(degree));
            }
    }
    return out;
}

std::vector<TauSeries> trr1_residuals(const FrobeniusModel& m, const TauSeries& F0, const TauSeries& F1, int degree) {
    const auto& b = F0.bounds();
    if (b.degree - 3 < degree || F1.bounds().degree - 1 < degree)
        throw TruncationInsufficient("genus-one recursion needs F0 to degree + 3 and F1 to degree + 1");
    Derivatives D0(F0), D1(F1);
    std::vector<TauSeries> out;
    for (int p = 1; p <= b.levels; ++p)
        for (int a = 1; a <= b.n; ++a) {
            TimeIndex lower{a, p - 1};
            TauSeries r = D1.get({{a, p}});
            for (int nu = 1; nu <= b.n; ++nu)
                for (int mu = 1; mu <= b.n; ++mu) {
                    const Scalar& e = m.eta_inv[nu - 1][mu - 1];
                    if (e.is_zero()) continue;
                    r -= D0.get({lower, {nu, 0}}) * D1.get({{mu, 0}}) * e;
                    r -= D0.get({lower, {nu, 0}, {mu, 0}}) * (e * Scalar(1, 24));
                }
            out.push_back(r.with_degree(degree));
        }
    return out;
}

GenusEvaluator::GenusEvaluator(const HierarchySolution& s) : s_(s) {
    CanonicalData d = canonical_coordinates(s.model);
    SeriesEvaluator ev(s.v);
    for (const auto& u : d.u) u_.push_back(ev.eval(u));
    for (int i = 1; i <= s.model.n; ++i)
        if (canon(i, 1).constant_term().is_zero())
            throw InadmissibleSolution("u_" + std::to_string(i) + "' vanishes at the base point");
    for (int i = 0; i < s.model.n; ++i)
        for (int j = i + 1; j < s.model.n; ++j)
            if ((u_[i] - u_[j]).constant_term().is_zero())
                throw InadmissibleSolution("canonical coordinates collide at the base point");
}

const TauSeries& GenusEvaluator::canon(int i, int s) {
    if (s == 0) return u_.at(i - 1);
    auto key = std::make_pair(i, s);
    if (auto it = jets_.find(key); it != jets_.end()) return it->second;
    TauSeries d = canon(i, s - 1).d(1, 0);
    return jets_.emplace(key, std::move(d)).first->second;
}

TauSeries GenusEvaluator::eval(const GenusJetFunction& f) {
    SeriesEvaluator ev(s_.v);
    ev.set_extra([this](const Atom& a) -> TauSeries {
        if (a.kind == AtomKind::Canon) return canon(a.a, a.b);
        if (a.kind == AtomKind::Diff) return u_.at(a.a - 1) - u_.at(a.b - 1);
        throw std::domain_error("unexpected atom " + atom_str(a) + " in a genus function");
    });
    TauSeries out = ev.eval(f.expr);
    for (const auto& [a, c] : f.logs) out += ev.atom_value(a).log() * c;
    out.add(TauSeries::Key{0, 0}, -out.constant_term());
    return out;
}

std::vector<TauSeries> full_tau_log(ThetaTable& t, const HierarchySolution& s, int g_max) {
    std::vector<TauSeries> out{genus0_free_energy(t, s)};
    if (g_max >= 1) {
        GenusEvaluator ge(s);
        out.push_back(ge.eval(genus1(s.model)));
        if (g_max >= 2) out.push_back(ge.eval(genus2(s.model)));
    }
    if (g_max > 2) throw UnsupportedModel("free energies implemented through genus two");
    return out;
}

Scalar gw_invariant(ThetaTable& t, int genus, const std::vector<TimeIndex>& insertions) {
    if (genus < 0 || genus > 2) throw UnsupportedModel("correlators implemented through genus two");
    int n = t.model().n;
    int levels = 0;
    std::map<TimeIndex, int> mult;
    for (auto i : insertions) {
        if (i.first < 1 || i.first > n || i.second < 0) throw std::invalid_argument("bad insertion index");
        levels = std::max(levels, i.second);
        ++mult[i];
    }
    int k = static_cast<int>(insertions.size());
    int extra = genus == 2 ? 4 : genus;
    HierarchySolution s = topological_solution(t, levels, k + extra);
    TauSeries F = genus == 0 ? genus0_free_energy(t, s) : full_tau_log(t, s, genus).back();
    std::vector<std::array<int, 3>> mono;
    mpz_class fact = 1;
    for (const auto& [i, e] : mult) {
        mono.push_back({i.first, i.second, e});
        for (int q = 2; q <= e; ++q) fact *= q;
    }
    return F.coeff(mono) * Scalar(mpq_class(fact));
}

JetPoly small_phase_space(const TauSeries& s) {
    const auto& b = s.bounds();
    JetPoly out;
    for (const auto& [k, c] : s.terms()) {
        if (k.eps != 0) continue;
        bool small = true;
        Monomial m;
        for (int p = 0; p <= b.levels && small; ++p)
            for (int a = 1; a <= b.n; ++a) {
                int e = TauSeries::power_of(k.exps, s.var_id(a, p));
                if (e == 0) continue;
                if (p > 0) {
                    small = false;
                    break;
                }
                m = m.times(Atom::jet(a, 0), Frac(e));
            }
        if (small) out.add(m, c);
    }
    return out;
}

JetPoly genus1_small_phase_space(ThetaTable& t, int degree) {
    HierarchySolution s = topological_solution(t, 0, degree + 1);
    GenusEvaluator ge(s);
    return small_phase_space(ge.eval(genus1(t.model())));
}

JetPoly getzler_residual(const FrobeniusModel& m, const JetPoly& G) {
    int n = m.n;
    auto jet = [](int a) { return Atom::jet(a + 1, 0); };
    auto raise = [&](const std::function<JetPoly(int)>& lower, int mu) {
        JetPoly r;
        for (int nu = 0; nu < n; ++nu)
            if (!m.eta_inv[mu][nu].is_zero()) r += lower(nu) * m.eta_inv[mu][nu];
        return r;
    };
    // F3[a][b][c], then c^mu with 2, 3 and 4 lower indices
    std::vector<std::vector<std::vector<JetPoly>>> F3(n, std::vector<std::vector<JetPoly>>(n, std::vector<JetPoly>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) F3[a][b][c] = third_derivative(m, a, b, c);
    auto c2 = [&](int mu, int a, int b) { return raise([&](int nu) { return F3[nu][a][b]; }, mu); };
    auto c3 = [&](int mu, int a, int b, int c) {
        return raise([&](int nu) { return partial(F3[nu][a][b], jet(c)); }, mu);
    };
    auto c4 = [&](int mu, int a, int b, int c, int d) {
        return raise([&](int nu) { return partial(partial(F3[nu][a][b], jet(c)), jet(d)); }, mu);
    };
    std::vector<JetPoly> G1(n);
    std::vector<std::vector<JetPoly>> G2(n, std::vector<JetPoly>(n));
    for (int a = 0; a < n; ++a) {
        G1[a] = partial(G, jet(a));
        for (int b = 0; b < n; ++b) G2[a][b] = partial(G1[a], jet(b));
    }
    JetPoly out;
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
            for (int a3 = 0; a3 < n; ++a3)
                for (int a4 = 0; a4 < n; ++a4) {
                    JetPoly s;
                    for (int mu = 0; mu < n; ++mu)
                        for (int nu = 0; nu < n; ++nu) {
                            s += c2(mu, a1, a2) * c2(nu, a3, a4) * G2[mu][nu] * Scalar(3);
                            s -= c2(mu, a1, a2) * c2(nu, a3, mu) * G2[a4][nu] * Scalar(4);
                            s -= c2(mu, a1, a2) * c3(nu, a3, a4, mu) * G1[nu];
                            s += c3(mu, a1, a2, a3) * c2(nu, a4, mu) * G1[nu] * Scalar(2);
                            s += c3(mu, a1, a2, a3) * c3(nu, a4, mu, nu) * Scalar(1, 6);
                            s += c4(mu, a1, a2, a3, a4) * c2(nu, mu, nu) * Scalar(1, 24);
                            s -= c3(mu, a1, a2, nu) * c3(nu, a3, a4, mu) * Scalar(1, 4);
                        }
                    Monomial z;
                    for (int a : {a1, a2, a3, a4}) z = z.times(Atom::test(0, a + 1, 0), Frac(1));
                    out += s * JetPoly(z);
                }
    return out;
}

}  // namespace ft
