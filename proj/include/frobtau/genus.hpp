#pragma once

#include "frobtau/frobenius.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ft {

// Genus-g jet function in canonical coordinates: atoms Canon(i,s) = u_i^{(s)} and
// Diff(i,j) = u_i - u_j. Genus one is a sum of logarithms, higher genera are
// rational expressions. Additive constants are dropped.
struct GenusJetFunction {
    int genus = 0;
    int n = 1;
    std::vector<std::pair<Atom, Scalar>> logs;  // sum c * log(atom)
    JetPoly expr;
    int max_jet_order() const;
    std::string str() const;
};

// Frame data substituted into the genus-two term table, as expression text.
struct Genus2Frame {
    int n = 1;
    std::function<std::string(int, int)> V;  // V_ij, i != j
    std::function<std::string(int)> h;       // h_i
};

const std::vector<std::string>& genus2_terms();
// One table entry summed over index values with nonvanishing u_ij and V_ij.
JetPoly expand_genus2_term(const std::string& term, const Genus2Frame& frame);
Genus2Frame model_frame(const FrobeniusModel& m);

GenusJetFunction genus1(const FrobeniusModel& m);
GenusJetFunction genus2(const FrobeniusModel& m);

// KdV only: rewrite a canonical jet function through u = v (flat jets v[1,s]).
JetPoly to_flat_jets(const JetPoly& canonical);

}  // namespace ft
