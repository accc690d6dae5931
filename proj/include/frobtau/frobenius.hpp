#pragma once

#include "frobtau/jet.hpp"
#include "frobtau/poisson.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ft {

struct UnsupportedModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ScalarMatrix = std::vector<std::vector<Scalar>>;
using JetMatrix = std::vector<std::vector<JetPoly>>;

enum class Builtin { None, KdV, I2, CP1 };

struct CanonicalData {
    std::vector<JetPoly> u;          // u_i(v)
    std::vector<JetPoly> h_squared;  // h_i^2 in v
    // h_i = c_i (u_1 - u_2)^{e} for the two-dimensional models; empty otherwise
    std::vector<Scalar> h_coeff;
    Frac h_exponent;
    ScalarMatrix V;
};

struct FrobeniusModel {
    std::string name;
    int n = 1;
    ScalarMatrix eta;
    ScalarMatrix eta_inv;
    JetPoly F;
    std::vector<JetPoly> euler;  // E^alpha(v), affine-linear
    Scalar charge;
    std::vector<Scalar> mu;      // diagonal of mu-hat
    ScalarMatrix R;              // nilpotent part, R = R_1 + R_2 + ...
    Builtin builtin = Builtin::None;
    Scalar kappa;                // I2 parameter

    // R_k: entries R^a_b with mu_a - mu_b = k
    ScalarMatrix R_part(int k) const;
    int max_R_degree() const;
};

FrobeniusModel make_kdv();
FrobeniusModel make_i2(const Scalar& kappa);
FrobeniusModel make_cp1();
FrobeniusModel make_model(int n, const ScalarMatrix& eta, const JetPoly& F, const std::vector<JetPoly>& euler,
                          const Scalar& charge, const std::vector<Scalar>& mu, const ScalarMatrix& R,
                          const std::string& name = "custom");
FrobeniusModel builtin_model(const std::string& name, const std::optional<Scalar>& kappa = std::nullopt);

ScalarMatrix invert_scalar_matrix(const ScalarMatrix& m);

// c[a][b][g] = c_{ab}^g (0-based indices)
std::vector<JetMatrix> structure_constants(const FrobeniusModel& m);
// c_{abg} = third derivatives of F (0-based indices)
JetPoly third_derivative(const FrobeniusModel& m, int a, int b, int g);

struct ValidationReport {
    std::vector<JetPoly> associativity;  // nonzero entries only
    std::vector<JetPoly> unity;
    JetPoly quasihomogeneity;            // E F - (3-d) F modulo quadratic polynomials
    bool ok() const { return associativity.empty() && unity.empty() && quasihomogeneity.is_zero(); }
};
ValidationReport validate_model(const FrobeniusModel& m);

struct IntersectionForm {
    JetMatrix g;                          // g^{ab}
    std::vector<JetMatrix> gamma;         // gamma[a][b][c] = Gamma^{ab}_c
};
IntersectionForm intersection_form(const FrobeniusModel& m);
std::pair<LocalBivector, LocalBivector> hydrodynamic_pencil(const FrobeniusModel& m);

CanonicalData canonical_coordinates(const FrobeniusModel& m);

// du/dv Jacobian and its inverse dv/du for the closed-form canonical map.
JetMatrix canonical_jacobian(const FrobeniusModel& m, const CanonicalData& c);

struct TauIData {
    // d log tau_I = sum_i H_i du_i with H_i = 1/2 sum_j V_ij^2/(u_i - u_j);
    // for two components tau_I = (u_1 - u_2)^exponent
    Scalar exponent;
    Scalar V12_squared;
};
TauIData isomonodromic_tau_exponents(const FrobeniusModel& m);

// kappa_0 = 1/4 tr(1/4 - mu^2)
Scalar kappa0(const FrobeniusModel& m);

}  // namespace ft
