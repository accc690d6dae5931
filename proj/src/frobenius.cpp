#include "frobtau/frobenius.hpp"

namespace ft {

namespace {

Frac to_frac(const Scalar& s) {
    mpq_class q = s.rational_value();
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw InvalidModel("parameter too large");
    return Frac(q.get_num().get_si(), q.get_den().get_si());
}

ScalarMatrix zeros(int n) { return ScalarMatrix(n, std::vector<Scalar>(n)); }

bool is_quadratic_poly_monomial(const Monomial& m) {
    std::int64_t deg = 0;
    for (const auto& [a, k] : m.factors()) {
        if (a.kind != AtomKind::Jet || a.b != 0 || !k.is_integer() || k.num < 0) return false;
        deg += k.num;
    }
    return deg <= 2;
}

}  // namespace

ScalarMatrix FrobeniusModel::R_part(int k) const {
    ScalarMatrix r = zeros(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!R[a][b].is_zero() && mu[a] - mu[b] == Scalar(k)) r[a][b] = R[a][b];
    return r;
}

int FrobeniusModel::max_R_degree() const {
    int top = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!R[a][b].is_zero()) {
                Scalar d = mu[a] - mu[b];
                top = std::max<int>(top, static_cast<int>(d.rational_value().get_num().get_si()));
            }
    return top;
}

ScalarMatrix invert_scalar_matrix(const ScalarMatrix& m) {
    int n = static_cast<int>(m.size());
    ScalarMatrix a = m, inv = zeros(n);
    for (int i = 0; i < n; ++i) inv[i][i] = Scalar(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw InvalidModel("singular matrix");
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        Scalar p = a[c][c].inverse();
        for (int k = 0; k < n; ++k) {
            a[c][k] = a[c][k] * p;
            inv[c][k] = inv[c][k] * p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Scalar f = a[r][c];
            for (int k = 0; k < n; ++k) {
                a[r][k] = a[r][k] - f * a[c][k];
                inv[r][k] = inv[r][k] - f * inv[c][k];
            }
        }
    }
    return inv;
}

FrobeniusModel make_model(int n, const ScalarMatrix& eta, const JetPoly& F, const std::vector<JetPoly>& euler,
                          const Scalar& charge, const std::vector<Scalar>& mu, const ScalarMatrix& R,
                          const std::string& name) {
    FrobeniusModel m;
    m.name = name;
    m.n = n;
    if (static_cast<int>(eta.size()) != n || static_cast<int>(euler.size()) != n || static_cast<int>(mu.size()) != n)
        throw InvalidModel("model data has inconsistent dimensions");
    m.eta = eta;
    m.eta_inv = invert_scalar_matrix(eta);
    m.F = F;
    m.euler = euler;
    m.charge = charge;
    m.mu = mu;
    m.R = R.empty() ? zeros(n) : R;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!(m.eta[a][b] == m.eta[b][a])) throw InvalidModel("eta is not symmetric");
            if (m.R[a][b].is_zero()) continue;
            Scalar d = mu[a] - mu[b];
            if (!d.is_rational() || d.rational_value() <= 0 || d.rational_value().get_den() != 1)
                throw InvalidModel("R entry not compatible with the spectrum");
        }
    return m;
}

FrobeniusModel make_kdv() {
    FrobeniusModel m = make_model(1, {{Scalar(1)}}, JetPoly::v(1).pow(Frac(3)) * Scalar(1, 6), {JetPoly::v(1)},
                                  Scalar(0), {Scalar(0)}, {}, "kdv");
    m.builtin = Builtin::KdV;
    return m;
}

FrobeniusModel make_i2(const Scalar& kappa) {
    if (!kappa.is_rational()) throw InvalidModel("kappa must be rational");
    mpq_class k = kappa.rational_value();
    if (k == 0 || k == 1 || k == -1) throw InvalidModel("kappa must not be 0 or +-1");
    Frac kf = to_frac(kappa);
    JetPoly F = JetPoly::v(1).pow(Frac(2)) * JetPoly::v(2) * Scalar(1, 2) +
                JetPoly::v(2).pow(kf + Frac(1)) * Scalar(mpq_class(1) / (k * k - 1));
    Scalar two_over_k(mpq_class(2) / k);
    ScalarMatrix eta{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    FrobeniusModel m = make_model(2, eta, F, {JetPoly::v(1), JetPoly::v(2) * two_over_k}, Scalar(1) - two_over_k,
                                  {Scalar(-1, 2) + Scalar(mpq_class(1) / k), Scalar(1, 2) - Scalar(mpq_class(1) / k)},
                                  {}, "i2(" + mpq_str(k) + ")");
    m.builtin = Builtin::I2;
    m.kappa = kappa;
    return m;
}

FrobeniusModel make_cp1() {
    JetPoly F = JetPoly::v(1).pow(Frac(2)) * JetPoly::v(2) * Scalar(1, 2) + JetPoly::expv(2);
    ScalarMatrix eta{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    ScalarMatrix R{{Scalar(0), Scalar(0)}, {Scalar(2), Scalar(0)}};
    FrobeniusModel m = make_model(2, eta, F, {JetPoly::v(1), JetPoly(2)}, Scalar(1), {Scalar(-1, 2), Scalar(1, 2)}, R,
                                  "cp1");
    m.builtin = Builtin::CP1;
    return m;
}

FrobeniusModel builtin_model(const std::string& name, const std::optional<Scalar>& kappa) {
    if (name == "kdv") return make_kdv();
    if (name == "cp1") return make_cp1();
    if (name == "i2") {
        if (!kappa) throw InvalidModel("i2 needs kappa");
        return make_i2(*kappa);
    }
    throw UnsupportedModel("unknown builtin model '" + name + "'");
}

JetPoly third_derivative(const FrobeniusModel& m, int a, int b, int g) {
    return partial(partial(partial(m.F, Atom::jet(a + 1, 0)), Atom::jet(b + 1, 0)), Atom::jet(g + 1, 0));
}

std::vector<JetMatrix> structure_constants(const FrobeniusModel& m) {
    int n = m.n;
    std::vector<JetMatrix> c(n, JetMatrix(n, std::vector<JetPoly>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int e = 0; e < n; ++e) {
                JetPoly t = third_derivative(m, a, b, e);
                if (t.is_zero()) continue;
                for (int g = 0; g < n; ++g)
                    if (!m.eta_inv[g][e].is_zero()) c[a][b][g] += t * m.eta_inv[g][e];
            }
    return c;
}

ValidationReport validate_model(const FrobeniusModel& m) {
    ValidationReport r;
    int n = m.n;
    auto c = structure_constants(m);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                for (int d = 0; d < n; ++d) {
                    JetPoly s;
                    for (int e = 0; e < n; ++e) s += c[a][b][e] * c[e][g][d] - c[a][g][e] * c[e][b][d];
                    if (!s.is_zero()) r.associativity.push_back(s);
                }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            JetPoly s = third_derivative(m, 0, a, b) - JetPoly(m.eta[a][b]);
            if (!s.is_zero()) r.unity.push_back(s);
        }
    JetPoly ef;
    for (int a = 0; a < n; ++a) ef += m.euler[a] * partial(m.F, Atom::jet(a + 1, 0));
    ef -= m.F * (Scalar(3) - m.charge);
    for (const auto& [mono, coef] : ef.terms())
        if (!is_quadratic_poly_monomial(mono)) r.quasihomogeneity.add(mono, coef);
    return r;
}

IntersectionForm intersection_form(const FrobeniusModel& m) {
    int n = m.n;
    auto c = structure_constants(m);
    // c^{ab}_g = eta^{am} c_{mg}^b
    auto cup = [&](int a, int b, int g) {
        JetPoly s;
        for (int q = 0; q < n; ++q)
            if (!m.eta_inv[a][q].is_zero()) s += c[q][g][b] * m.eta_inv[a][q];
        return s;
    };
    IntersectionForm f;
    f.g.assign(n, std::vector<JetPoly>(n));
    f.gamma.assign(n, JetMatrix(n, std::vector<JetPoly>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int e = 0; e < n; ++e) f.g[a][b] += m.euler[e] * cup(a, b, e);
            for (int g = 0; g < n; ++g) f.gamma[a][b][g] = cup(a, b, g) * (Scalar(1, 2) - m.mu[b]);
        }
    return f;
}

std::pair<LocalBivector, LocalBivector> hydrodynamic_pencil(const FrobeniusModel& m) {
    int n = m.n;
    JetMatrix eta(n, std::vector<JetPoly>(n));
    std::vector<JetMatrix> zero(n, JetMatrix(n, std::vector<JetPoly>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) eta[a][b] = JetPoly(m.eta_inv[a][b]);
    auto form = intersection_form(m);
    return {fixtures::hydrodynamic(eta, zero), fixtures::hydrodynamic(form.g, form.gamma)};
}

CanonicalData canonical_coordinates(const FrobeniusModel& m) {
    CanonicalData d;
    switch (m.builtin) {
        case Builtin::KdV:
            d.u = {JetPoly::v(1)};
            d.h_coeff = {Scalar(1)};
            d.h_exponent = Frac(0);
            d.V = {{Scalar(0)}};
            break;
        case Builtin::CP1: {
            JetPoly e = JetPoly::expv(2, Frac(1, 2)) * Scalar(2);
            d.u = {JetPoly::v(1) + e, JetPoly::v(1) - e};
            Scalar r2 = Scalar::generator(generator_index("sqrt2"));
            Scalar i = Scalar::generator(generator_index("i"));
            d.h_coeff = {r2, -(r2 * i)};
            d.h_exponent = Frac(-1, 2);
            d.V = {{Scalar(0), -i * Scalar(1, 2)}, {i * Scalar(1, 2), Scalar(0)}};
            break;
        }
        case Builtin::I2: {
            mpq_class k = m.kappa.rational_value();
            Frac kf = to_frac(m.kappa);
            Scalar c = Scalar(2) * Scalar::sqrt_of(k).inverse();
            JetPoly rho = JetPoly::v(2).pow(kf * Frac(1, 2)) * c;
            d.u = {JetPoly::v(1) + rho, JetPoly::v(1) - rho};
            Scalar i = Scalar::generator(generator_index("i"));
            Scalar a = i * (Scalar(1, 2) - Scalar(mpq_class(1) / k));
            d.V = {{Scalar(0), -a}, {a, Scalar(0)}};
            d.h_exponent = Frac(1) / kf - Frac(1, 2);
            break;
        }
        default: throw UnsupportedModel("canonical coordinates are only available for builtin models");
    }
    JetMatrix dv = invert_matrix(canonical_jacobian(m, d));
    for (int i = 0; i < m.n; ++i) {
        JetPoly h2;
        for (int a = 0; a < m.n; ++a)
            for (int b = 0; b < m.n; ++b)
                if (!m.eta[a][b].is_zero()) h2 += dv[a][i] * dv[b][i] * m.eta[a][b];
        d.h_squared.push_back(h2);
    }
    return d;
}

JetMatrix canonical_jacobian(const FrobeniusModel& m, const CanonicalData& c) {
    JetMatrix j(m.n, std::vector<JetPoly>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int a = 0; a < m.n; ++a) j[i][a] = partial(c.u[i], Atom::jet(a + 1, 0));
    return j;
}

TauIData isomonodromic_tau_exponents(const FrobeniusModel& m) {
    CanonicalData c = canonical_coordinates(m);
    TauIData t;
    if (m.n == 1) return t;
    if (m.n != 2) throw UnsupportedModel("tau_I exponent implemented for two-component models");
    t.V12_squared = c.V[0][1] * c.V[0][1];
    t.exponent = t.V12_squared * Scalar(1, 2);
    return t;
}

Scalar kappa0(const FrobeniusModel& m) {
    Scalar s;
    for (const auto& x : m.mu) s += Scalar(1, 4) - x * x;
    return s * Scalar(1, 4);
}

}  // namespace ft
