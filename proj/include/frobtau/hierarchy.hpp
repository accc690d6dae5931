#pragma once

#include "frobtau/frobenius.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace ft {

struct ResonanceUnresolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Degenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// theta_{alpha,p}(v), built level by level. Indices alpha are 1-based.
class ThetaTable {
public:
    explicit ThetaTable(FrobeniusModel m);

    const FrobeniusModel& model() const { return m_; }
    const JetPoly& theta(int alpha, int p);
    // d theta_{alpha,p} / d v^gamma
    JetPoly grad(int alpha, int p, int gamma);

private:
    void extend_to(int p);
    void closed_form_cp1(int p);

    FrobeniusModel m_;
    std::vector<JetMatrix> c_;
    JetMatrix U_;
    std::vector<std::vector<JetPoly>> levels_;  // levels_[p][alpha-1]
};

JetPoly theta(const FrobeniusModel& m, int alpha, int p);

// dv^beta/dt^{alpha,p} = eta^{beta gamma} d_x d_gamma theta_{alpha,p+1}
std::vector<JetPoly> flow_rhs(ThetaTable& t, int alpha, int p);

// Omega_{alpha,p;beta,q}
JetPoly omega(ThetaTable& t, int alpha, int p, int beta, int q);

// sum_{delta,s} df/dv^{delta,s} d_x^s X^delta
JetPoly evolution_derivative(const JetPoly& f, const std::vector<JetPoly>& X);

std::vector<JetPoly> check_flow_commutativity(ThetaTable& t, std::pair<int, int> a, std::pair<int, int> b);

// Residual [alpha][component] of
// P2 grad theta_{alpha,p} - (p + mu_alpha + 1/2) P1 grad theta_{alpha,p+1}
//   - sum_k sum_beta P1 grad theta_{beta,p+1-k} (R_k)^beta_alpha
std::vector<std::vector<JetPoly>> check_bihamiltonian_recursion(ThetaTable& t, int p);

// d theta_{alpha,p}/dt^{beta,q} - d_x Omega_{alpha,p;beta,q}
JetPoly tau_symmetry_residual(ThetaTable& t, int alpha, int p, int beta, int q);

// delta/delta v of dh/dt^{alpha,p}; zero iff int h dx is conserved by that flow
std::vector<JetPoly> conservation_residual(ThetaTable& t, const JetPoly& h, int alpha, int p);

}  // namespace ft
