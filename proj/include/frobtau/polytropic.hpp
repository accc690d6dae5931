#pragma once

#include "frobtau/jet.hpp"

#include <string>
#include <vector>

namespace ft {

// (sum num[i] kappa^i) / (den kappa^den_pow)
struct KappaRational {
    std::string name;
    std::vector<long> num;
    long den = 1;
    int den_pow = 0;
    Scalar at(const Scalar& kappa) const;
    std::string str() const;
};

const std::vector<KappaRational>& polytropic_a();
const std::vector<KappaRational>& polytropic_b();

// u_t + d_x flux[0] = 0, rho_t + d_x flux[1] = 0 with u = v[1], rho = v[2], through eps^4.
struct PolytropicSystem {
    Scalar kappa;
    std::vector<Scalar> a, b;
    std::vector<JetPoly> flux;
};

PolytropicSystem polytropic_deformation(const Scalar& kappa);

// kappa = 2 only, w_pm = u pm sqrt2 rho. Returns, for each of w_+ and w_-, the part of its evolution
// (through eps^max_eps) that depends on the other variable. Both zero iff the system decouples.
std::vector<JetPoly> polytropic_coupling(const PolytropicSystem& s, int max_eps);

}  // namespace ft
