#include "frobtau/poisson.hpp"

#include <sstream>

namespace ft {

JetPoly DiffOp::at(int i, int j, int s) const {
    auto it = c.find({i, j, s});
    return it == c.end() ? JetPoly() : it->second;
}

void DiffOp::add(int i, int j, int s, const JetPoly& p) {
    if (p.is_zero()) return;
    auto [it, ins] = c.try_emplace({i, j, s}, p);
    if (!ins) {
        it->second += p;
        if (it->second.is_zero()) c.erase(it);
    }
}

int DiffOp::max_order() const {
    int r = -1;
    for (const auto& [k, p] : c) r = std::max(r, std::get<2>(k));
    return r;
}

DiffOp compose(const DiffOp& a, const DiffOp& b, int max_eps) {
    if (a.n != b.n) throw DimensionMismatch("operator sizes differ");
    DiffOp r;
    r.n = a.n;
    for (const auto& [ka, pa] : a.c) {
        auto [i, j, s] = ka;
        for (const auto& [kb, pb] : b.c) {
            auto [j2, k, t] = kb;
            if (j2 != j) continue;
            // d^s o f = sum_r C(s,r) f^{(r)} d^{s-r}
            JetPoly f = pb;
            for (int q = 0; q <= s; ++q) {
                JetPoly term = pa * f * Scalar(mpq_class(binomial(mpq_class(s), q)));
                if (max_eps >= 0) term = eps_truncate(term, max_eps);
                r.add(i, k, s - q + t, term);
                f = dx(f);
            }
        }
    }
    return r;
}

DiffOp adjoint(const DiffOp& a) {
    DiffOp r;
    r.n = a.n;
    for (const auto& [k, p] : a.c) {
        auto [i, j, s] = k;
        // (-d)^s o p = (-1)^s sum_q C(s,q) p^{(q)} d^{s-q}
        JetPoly f = p;
        for (int q = 0; q <= s; ++q) {
            mpq_class c = binomial(mpq_class(s), q);
            if (s % 2) c = -c;
            r.add(j, i, s - q, f * Scalar(c));
            f = dx(f);
        }
    }
    return r;
}

DiffOp op_sum(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    for (const auto& [k, p] : b.c) r.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), p);
    return r;
}

DiffOp op_scale(const DiffOp& a, const Scalar& s) {
    DiffOp r;
    r.n = a.n;
    for (const auto& [k, p] : a.c) r.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), p * s);
    return r;
}

DiffOp op_truncate(const DiffOp& a, int max_eps) {
    DiffOp r;
    r.n = a.n;
    for (const auto& [k, p] : a.c) r.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), eps_truncate(p, max_eps));
    return r;
}

std::vector<JetPoly> apply_op(const DiffOp& a, const std::vector<JetPoly>& w, int max_eps) {
    std::vector<JetPoly> out(a.n);
    for (const auto& [k, p] : a.c) {
        auto [i, j, s] = k;
        JetPoly term = p * dx(w.at(j - 1), s);
        if (max_eps >= 0) term = eps_truncate(term, max_eps);
        out[i - 1] += term;
    }
    return out;
}

std::string LocalBivector::str() const {
    std::ostringstream os;
    for (const auto& [k, p] : op.c) {
        auto [i, j, s] = k;
        os << "A[" << i << "," << j << "," << s << "] = " << p.str() << "\n";
    }
    return os.str();
}

std::string LocalTrivector::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    for (const auto& [k, p] : c) {
        auto [i, j, kk, pp, q] = k;
        os << "T[" << i << "," << j << "," << kk << ";" << pp << "," << q << "] = " << p.str() << "\n";
    }
    return os.str();
}

std::map<std::tuple<int, int, int>, JetPoly> antisymmetry_defect(const DiffOp& a) {
    std::map<std::tuple<int, int, int>, JetPoly> out;
    int top = a.max_order();
    for (int i = 1; i <= a.n; ++i)
        for (int j = 1; j <= a.n; ++j)
            for (int s = 0; s <= top; ++s) {
                JetPoly d = a.at(j, i, s);
                for (int t = s; t <= top; ++t) {
                    JetPoly at = a.at(i, j, t);
                    if (at.is_zero()) continue;
                    mpq_class c = binomial(mpq_class(t), s);
                    if ((t + 1) % 2) c = -c;
                    d -= dx(at, t - s) * Scalar(c);
                }
                if (!d.is_zero()) out[{i, j, s}] = d;
            }
    return out;
}

bool is_graded(const DiffOp& a) {
    for (const auto& [k, p] : a.c) {
        int s = std::get<2>(k);
        for (const auto& [m, c] : p.terms())
            if (!(m.jet_degree() == Frac(1 - s))) return false;
    }
    return true;
}

LocalBivector normalize_antisymmetric(const DiffOp& raw) {
    auto d = antisymmetry_defect(raw);
    if (!d.empty()) {
        auto [i, j, s] = d.begin()->first;
        throw NotAntisymmetric(i, j, s);
    }
    if (!is_graded(raw)) throw NotGraded("bivector coefficients violate the epsilon grading");
    return LocalBivector{raw};
}

LocalTrivector trivector_normal_form(int n, const JetPoly& integrand) {
    // move every derivative off phi: phi^{(a)} R ~ (-1)^a phi d^a R
    JetPoly flat;
    for (const auto& [m, c] : integrand.terms()) {
        const Atom* phi = nullptr;
        for (const auto& [a, k] : m.factors())
            if (a.kind == AtomKind::Test && a.a == 0) phi = &a;
        if (!phi) throw std::logic_error("trivector integrand without phi");
        int order = phi->c;
        int comp = phi->b;
        if (order == 0) {
            flat.add(m, c);
            continue;
        }
        JetPoly rest(m.without(*phi), order % 2 ? -c : c);
        flat += dx(rest, order) * JetPoly::atom(Atom::test(0, comp, 0));
    }
    LocalTrivector t;
    t.n = n;
    for (const auto& [m, c] : flat.terms()) {
        int i = 0, j = 0, k = 0, p = 0, q = 0;
        Monomial core;
        for (const auto& [a, e] : m.factors()) {
            if (a.kind != AtomKind::Test) {
                core = core.times(a, e);
                continue;
            }
            if (!(e == Frac(1))) throw std::logic_error("test function appears nonlinearly");
            if (a.a == 0) i = a.b;
            if (a.a == 1) { j = a.b; p = a.c; }
            if (a.a == 2) { k = a.b; q = a.c; }
        }
        if (!i || !j || !k) throw std::logic_error("trivector integrand is not trilinear");
        auto key = std::make_tuple(i, j, k, p, q);
        auto [it, ins] = t.c.try_emplace(key, JetPoly(core, c));
        if (!ins) {
            it->second.add(core, c);
            if (it->second.is_zero()) t.c.erase(it);
        }
    }
    return t;
}

namespace {

// int a_i dA^{ij}_t/du^{l,s} b_j^{(t)} d^s(B^{lk}_r c_k^{(r)})
JetPoly schouten_term(const DiffOp& A, const DiffOp& B, int wa, int wb, int wc) {
    JetPoly out;
    int n = A.n;
    for (const auto& [ka, pa] : A.c) {
        auto [i, j, t] = ka;
        JetPoly left = pa * JetPoly::atom(Atom::test(wa, i, 0)) * JetPoly::atom(Atom::test(wb, j, t));
        for (int l = 1; l <= n; ++l) {
            int top = max_jet_order(pa, l);
            for (int s = 0; s <= top; ++s) {
                JetPoly dA = partial(left, Atom::jet(l, s));
                if (dA.is_zero()) continue;
                JetPoly right;
                for (const auto& [kb, pb] : B.c) {
                    auto [l2, k, r] = kb;
                    if (l2 != l) continue;
                    right += pb * JetPoly::atom(Atom::test(wc, k, r));
                }
                if (right.is_zero()) continue;
                out += dA * dx(right, s);
            }
        }
    }
    return out;
}

}  // namespace

LocalTrivector schouten_bracket(const LocalBivector& a, const LocalBivector& b) {
    if (a.n() != b.n()) throw DimensionMismatch("bivectors of different dimension");
    JetPoly integrand;
    // base points x, z, y in turn: (phi,psi,chi), (chi,phi,psi), (psi,chi,phi)
    const int cyc[3][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
    for (const auto& w : cyc) {
        integrand += schouten_term(a.op, b.op, w[0], w[1], w[2]);
        integrand += schouten_term(b.op, a.op, w[0], w[1], w[2]);
    }
    return trivector_normal_form(a.n(), integrand);
}

LocalTrivector jacobi_residual(const LocalBivector& a) {
    LocalTrivector t = schouten_bracket(a, a);
    for (auto& [k, p] : t.c) p *= Scalar(1, 2);
    return t;
}

LocalTrivector compatibility_residual(const LocalBivector& a, const LocalBivector& b) {
    return schouten_bracket(a, b);
}

std::vector<JetPoly> hamiltonian_flow(const LocalBivector& a, const JetPoly& h) {
    std::vector<JetPoly> grad;
    for (int j = 1; j <= a.n(); ++j) grad.push_back(variational(h, j));
    return apply_op(a.op, grad);
}

MiuraMap MiuraMap::identity(int n) {
    MiuraMap m;
    m.n = n;
    for (int a = 1; a <= n; ++a) m.F.push_back(JetPoly::v(a));
    return m;
}

std::string MiuraMap::str() const {
    std::string out;
    for (int i = 0; i < n; ++i) out += "u[" + std::to_string(i + 1) + "] = " + F[i].str() + "\n";
    return out;
}

DiffOp linearization(const MiuraMap& m) {
    DiffOp L;
    L.n = m.n;
    for (int i = 1; i <= m.n; ++i)
        for (int j = 1; j <= m.n; ++j) {
            int top = max_jet_order(m.F[i - 1], j);
            for (int s = 0; s <= top; ++s) L.add(i, j, s, partial(m.F[i - 1], Atom::jet(j, s)));
        }
    return L;
}

namespace {

JetPoly determinant(const std::vector<std::vector<JetPoly>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    JetPoly d;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<JetPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<JetPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        JetPoly term = m[0][c] * determinant(minor);
        d += c % 2 ? -term : term;
    }
    return d;
}

}  // namespace

std::vector<std::vector<JetPoly>> invert_matrix(const std::vector<std::vector<JetPoly>>& m) {
    std::size_t n = m.size();
    JetPoly det = determinant(m);
    if (!det.is_monomial()) throw NonInvertibleJacobian("Jacobian determinant is not invertible: " + det.str());
    JetPoly inv = det.pow(Frac(-1));
    std::vector<std::vector<JetPoly>> r(n, std::vector<JetPoly>(n));
    if (n == 1) {
        r[0][0] = inv;
        return r;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<JetPoly>> minor;
            for (std::size_t a = 0; a < n; ++a) {
                if (a == j) continue;
                std::vector<JetPoly> row;
                for (std::size_t b = 0; b < n; ++b)
                    if (b != i) row.push_back(m[a][b]);
                minor.push_back(row);
            }
            JetPoly cof = determinant(minor) * inv;
            r[i][j] = (i + j) % 2 ? -cof : cof;
        }
    return r;
}

LocalBivector miura_transform_bracket(const LocalBivector& a, const MiuraMap& m, int order) {
    if (a.n() != m.n) throw DimensionMismatch("bracket and Miura map dimensions differ");
    int n = m.n;
    DiffOp L = linearization(m);
    std::vector<std::vector<JetPoly>> J(n, std::vector<JetPoly>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) J[i - 1][j - 1] = eps_part(L.at(i, j, 0), 0);
    auto Jinv = invert_matrix(J);
    DiffOp Ji, R = L;
    Ji.n = R.n = n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Ji.add(i, j, 0, Jinv[i - 1][j - 1]);
            R.add(i, j, 0, -J[i - 1][j - 1]);
        }
    for (const auto& [k, p] : R.c)
        if (min_eps_power(p) < 1) throw NotGraded("Miura map has epsilon-free jet dependence");
    // L^{-1} = sum_m (-J^{-1} R)^m J^{-1}
    DiffOp K = op_scale(compose(Ji, R, order), Scalar(-1));
    DiffOp M = Ji, term = Ji;
    for (int k = 1; k <= order; ++k) {
        term = compose(K, term, order);
        M = op_sum(M, term);
    }
    DiffOp Pu;
    Pu.n = n;
    for (const auto& [k, p] : a.op.c)
        Pu.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), substitute_jets(p, m.F, order));
    DiffOp Pv = compose(compose(M, Pu, order), adjoint(M), order);
    return LocalBivector{op_truncate(Pv, order)};
}

MiuraMap compose_miura(const MiuraMap& outer, const MiuraMap& inner, int order) {
    if (outer.n != inner.n) throw DimensionMismatch("Miura maps of different dimension");
    MiuraMap r;
    r.n = outer.n;
    for (const auto& f : outer.F) r.F.push_back(eps_truncate(substitute_jets(f, inner.F, order), order));
    return r;
}

MiuraMap invert_miura(const MiuraMap& m, int order) {
    int n = m.n;
    // leading part must be affine-linear with constant coefficients
    std::vector<std::vector<JetPoly>> A(n, std::vector<JetPoly>(n));
    std::vector<JetPoly> shift(n);
    for (int i = 0; i < n; ++i) {
        JetPoly f0 = eps_part(m.F[i], 0);
        shift[i] = JetPoly(f0.constant_term());
        for (int j = 1; j <= n; ++j) {
            JetPoly d = partial(f0, Atom::jet(j, 0));
            if (!d.is_constant()) throw NonInvertibleJacobian("leading part of the Miura map is not linear");
            A[i][j - 1] = d;
        }
        JetPoly lin = shift[i];
        for (int j = 1; j <= n; ++j) lin += A[i][j - 1] * JetPoly::v(j);
        if (!(lin == f0)) throw NonInvertibleJacobian("leading part of the Miura map is not linear");
    }
    auto Ainv = invert_matrix(A);
    MiuraMap h;
    h.n = n;
    for (int i = 0; i < n; ++i) {
        JetPoly r;
        for (int j = 0; j < n; ++j) r += Ainv[i][j] * (JetPoly::v(j + 1) - shift[j]);
        h.F.push_back(r);
    }
    for (int k = 1; k <= order; ++k) {
        MiuraMap fh = compose_miura(m, h, order);
        MiuraMap next;
        next.n = n;
        for (int i = 0; i < n; ++i) {
            JetPoly corr;
            for (int j = 0; j < n; ++j) corr += Ainv[i][j] * (fh.F[j] - JetPoly::v(j + 1));
            next.F.push_back(eps_truncate(h.F[i] - corr, order));
        }
        h = next;
    }
    return h;
}

namespace fixtures {

LocalBivector delta_prime(int n, const std::vector<std::vector<Scalar>>& eta) {
    DiffOp op;
    op.n = n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) op.add(i, j, 1, JetPoly(eta[i - 1][j - 1]));
    return normalize_antisymmetric(op);
}

LocalBivector magri(const Scalar& c) {
    DiffOp op;
    op.n = 1;
    op.add(1, 1, 1, JetPoly::v(1));
    op.add(1, 1, 0, JetPoly::v(1, 1) * Scalar(1, 2));
    op.add(1, 1, 3, JetPoly::eps(2) * c);
    return normalize_antisymmetric(op);
}

LocalBivector hydrodynamic(const std::vector<std::vector<JetPoly>>& g,
                           const std::vector<std::vector<std::vector<JetPoly>>>& gamma) {
    DiffOp op;
    op.n = static_cast<int>(g.size());
    for (int a = 1; a <= op.n; ++a)
        for (int b = 1; b <= op.n; ++b) {
            op.add(a, b, 1, g[a - 1][b - 1]);
            for (int c = 1; c <= op.n; ++c) op.add(a, b, 0, gamma[a - 1][b - 1][c - 1] * JetPoly::v(c, 1));
        }
    return normalize_antisymmetric(op);
}

}  // namespace fixtures

}  // namespace ft
