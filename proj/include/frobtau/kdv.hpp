#pragma once

#include "frobtau/jet.hpp"
#include "frobtau/poisson.hpp"
#include "frobtau/series.hpp"

#include <map>
#include <vector>

namespace ft {

// Classical: h_0 = u^2/2 - eps^2 u''/6. String: eps^2 -> -eps^2/2, h_0 = u^2/2 + eps^2 u''/12.
enum class KdvNorm { Classical, String };

JetPoly kdv_normalize(const JetPoly& p, KdvNorm norm);

// chi[m] for 1 <= m <= max_m (chi[0] is zero); solves i eps chi' - chi^2 = u - lambda in k = sqrt(lambda).
std::vector<JetPoly> riccati_chi(int max_m);

// Density of I_k = -4 int chi_{2k+3}, classical normalization.
JetPoly kdv_integral_density(int k);

// h_k, k >= -1, from the variational recursion.
JetPoly kdv_hamiltonian_density(int k, KdvNorm norm);
// Same densities read off 1/(1 + sum_j chi_{2j+1} lambda^{-j-1}).
JetPoly kdv_hamiltonian_density_generating(int k, KdvNorm norm);

// delta hbar_k / delta u: 1 for k = -1, h_{k-1} otherwise.
JetPoly kdv_gradient(int k, KdvNorm norm);

// u_t = d_x h_{k-1}; k = 0 gives u'.
JetPoly kdv_flow(int k, KdvNorm norm);

// d h_{i-1}/dt^j - d h_{j-1}/dt^i
JetPoly kdv_tau_symmetry_residual(int i, int j, KdvNorm norm);

// Magri pencil member u d + u'/2 + c eps^2 d^3 in the chosen normalization.
LocalBivector kdv_magri(KdvNorm norm);

// P2 grad hbar_{k-1} - (k + 1/2) d_x grad hbar_k
JetPoly kdv_lenard_residual(int k, KdvNorm norm);
// P2 grad I_{k-1} - d_x grad I_k, classical normalization
JetPoly kdv_lenard_residual_integrals(int k);

// v -> u through eps^order, order in {2, 4}.
MiuraMap kdv_quasimiura(int order, KdvNorm norm);

// u_t computed from a flow of v minus the target flow with u = F(v); truncated to eps^order.
JetPoly quasimiura_flow_residual(const MiuraMap& qm, const JetPoly& v_flow, const JetPoly& u_flow, int order);
// L P_v L^+ - P_u(F(v)) with L the linearization of the map.
DiffOp quasimiura_bracket_residual(const MiuraMap& qm, const LocalBivector& p_v, const LocalBivector& p_u, int order);

// Multiply by the monomial that makes every exponent non-negative.
JetPoly clear_denominators(const JetPoly& p);

// Delta F = log_coeff * log v' + sum_g eps^{2g-2} F[g-2], string normalization.
struct LoopAnsatz {
    Scalar log_coeff;
    Scalar kappa0;
    std::vector<JetPoly> F;
};

// Coefficient of lambda^{-2} and of (v - lambda)^{-p} in LHS - RHS.
struct LoopResidual {
    Scalar lambda2;
    std::map<int, JetPoly> poles;
    bool is_zero() const;
    std::string str() const;
};

LoopResidual kdv_loop_residual(const LoopAnsatz& a, int eps_order);

// F_1 = log v'/24, kappa0 = 1/16, F_2 three-term.
LoopAnsatz kdv_loop_solution();

// Bessel seed x = sum (-1)^m v^{m+1}/(m!(m+1)!) solved for v(x) through x^degree; entry e/2 is the
// eps^e coefficient of u = v + string-normalized quasi-Miura corrections.
std::vector<TauSeries> wp_series(int degree);

}  // namespace ft
