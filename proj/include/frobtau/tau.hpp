#pragma once

#include "frobtau/genus.hpp"
#include "frobtau/hierarchy.hpp"
#include "frobtau/series.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ft {

struct NonMonotoneSeed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InadmissibleSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using TimeIndex = std::pair<int, int>;  // (alpha, p)

// Series solution v^alpha(t) of sum_{alpha,p} (t^{alpha,p} - c^{alpha,p}) grad theta_{alpha,p}(v) = 0,
// with x = t^{1,0}. Components are upper-index flat coordinates.
struct HierarchySolution {
    FrobeniusModel model;
    std::map<TimeIndex, Scalar> c;
    std::vector<Scalar> base;  // v(0)
    SeriesBounds bounds;
    std::vector<TauSeries> v;
};

// c^{1,1} = 1, base point 0.
HierarchySolution topological_solution(ThetaTable& t, int levels, int degree);
// base must satisfy sum c grad theta(base) = 0; the linearization there must be invertible.
HierarchySolution hodograph_solution(ThetaTable& t, const std::map<TimeIndex, Scalar>& c, int levels, int degree,
                                     std::vector<Scalar> base = {});
// sum t~ grad theta(v) with upper index; zero within bounds
std::vector<TauSeries> hodograph_residual(ThetaTable& t, const HierarchySolution& s);

// F0 = 1/2 sum t~ t~ Omega(v)
TauSeries genus0_free_energy(ThetaTable& t, const HierarchySolution& s);

// Residuals of the genus-zero recursion for p >= 1 over all index triples;
// every returned series is truncated to `degree`.
std::vector<TauSeries> trr0_residuals(const FrobeniusModel& m, const TauSeries& F0, int degree);
// Genus-one recursion for <<tau_p(alpha)>>_1, p >= 1.
std::vector<TauSeries> trr1_residuals(const FrobeniusModel& m, const TauSeries& F0, const TauSeries& F1, int degree);

// Canonical jets u_i^{(s)}, u_i - u_j evaluated on a solution.
class GenusEvaluator {
public:
    explicit GenusEvaluator(const HierarchySolution& s);
    // additive constant removed
    TauSeries eval(const GenusJetFunction& f);
    const TauSeries& u(int i) const { return u_.at(i - 1); }

private:
    const TauSeries& canon(int i, int s);
    const HierarchySolution& s_;
    std::vector<TauSeries> u_;
    std::map<std::pair<int, int>, TauSeries> jets_;
};

// [F0, F1, ..., F_gmax] with log tau = sum eps^{2g-2} F_g; each F_g keeps its own degree bound.
std::vector<TauSeries> full_tau_log(ThetaTable& t, const HierarchySolution& s, int g_max);

// <tau_{p1}(phi_{a1}) ...>_g on the topological solution.
Scalar gw_invariant(ThetaTable& t, int genus, const std::vector<TimeIndex>& insertions);

// Monomials in t^{alpha,0} only become monomials in v^alpha.
JetPoly small_phase_space(const TauSeries& s);
// F1 on the topological solution restricted to t^{alpha,p>0} = 0, as a polynomial in v.
JetPoly genus1_small_phase_space(ThetaTable& t, int degree);

// Degree-4 polynomial in z_a = Atom::test(0, a, 0) with coefficients in v.
JetPoly getzler_residual(const FrobeniusModel& m, const JetPoly& G);

}  // namespace ft
