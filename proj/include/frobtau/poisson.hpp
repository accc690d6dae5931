#pragma once

#include "frobtau/jet.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ft {

struct NotAntisymmetric : std::runtime_error {
    int i, j, s;
    NotAntisymmetric(int i_, int j_, int s_)
        : std::runtime_error("bivector violates antisymmetry at (" + std::to_string(i_) + "," + std::to_string(j_) +
                             "," + std::to_string(s_) + ")"),
          i(i_), j(j_), s(s_) {}
};
struct NotGraded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonInvertibleJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix differential operator sum_s A^{ij}_s d_x^s, indices 1-based.
struct DiffOp {
    int n = 1;
    std::map<std::tuple<int, int, int>, JetPoly> c;

    JetPoly at(int i, int j, int s) const;
    void add(int i, int j, int s, const JetPoly& p);
    int max_order() const;
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const DiffOp&, const DiffOp&) = default;
};

DiffOp compose(const DiffOp& a, const DiffOp& b, int max_eps = -1);
DiffOp adjoint(const DiffOp& a);
DiffOp op_sum(const DiffOp& a, const DiffOp& b);
DiffOp op_scale(const DiffOp& a, const Scalar& s);
DiffOp op_truncate(const DiffOp& a, int max_eps);
std::vector<JetPoly> apply_op(const DiffOp& a, const std::vector<JetPoly>& w, int max_eps = -1);

// {u^i(x), u^j(y)} = sum_s A^{ij}_s delta^{(s)}(x-y)
struct LocalBivector {
    DiffOp op;
    int n() const { return op.n; }
    std::string str() const;
    friend bool operator==(const LocalBivector&, const LocalBivector&) = default;
};

// Coefficients T^{ijk}_{p,q} of T delta^{(p)}(x-y) delta^{(q)}(x-z); equivalently the
// trilinear functional  int T^{ijk}_{p,q} phi_i psi_j^{(p)} chi_k^{(q)} dx.
struct LocalTrivector {
    int n = 1;
    std::map<std::tuple<int, int, int, int, int>, JetPoly> c;
    bool is_zero() const { return c.empty(); }
    std::string str() const;
    friend bool operator==(const LocalTrivector&, const LocalTrivector&) = default;
};

// Antisymmetry residual per (i,j,s); empty iff antisymmetric.
std::map<std::tuple<int, int, int>, JetPoly> antisymmetry_defect(const DiffOp& a);
bool is_graded(const DiffOp& a);
LocalBivector normalize_antisymmetric(const DiffOp& raw);

// Reduce an integrand linear in phi, psi, chi test atoms to normal form.
LocalTrivector trivector_normal_form(int n, const JetPoly& integrand);

LocalTrivector schouten_bracket(const LocalBivector& a, const LocalBivector& b);
LocalTrivector jacobi_residual(const LocalBivector& a);
LocalTrivector compatibility_residual(const LocalBivector& a, const LocalBivector& b);

std::vector<JetPoly> hamiltonian_flow(const LocalBivector& a, const JetPoly& h);

// u^i = F^i(v; v_x, ...; eps), jets written in v.
struct MiuraMap {
    int n = 1;
    std::vector<JetPoly> F;
    static MiuraMap identity(int n);
    std::string str() const;
};

DiffOp linearization(const MiuraMap& m);
LocalBivector miura_transform_bracket(const LocalBivector& a, const MiuraMap& m, int order);
MiuraMap compose_miura(const MiuraMap& outer, const MiuraMap& inner, int order);
MiuraMap invert_miura(const MiuraMap& m, int order);

// Matrix inverse with monomial determinant (Laurent-invertible), else throws.
std::vector<std::vector<JetPoly>> invert_matrix(const std::vector<std::vector<JetPoly>>& m);

namespace fixtures {
LocalBivector delta_prime(int n, const std::vector<std::vector<Scalar>>& eta);
// u delta' + 1/2 u' delta + c eps^2 delta'''
LocalBivector magri(const Scalar& c);
// g^{ab}(v) delta' + Gamma^{ab}_c v^c_x delta
LocalBivector hydrodynamic(const std::vector<std::vector<JetPoly>>& g,
                           const std::vector<std::vector<std::vector<JetPoly>>>& gamma);
}  // namespace fixtures

}  // namespace ft
