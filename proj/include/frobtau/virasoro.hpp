#pragma once

#include "frobtau/frobenius.hpp"
#include "frobtau/series.hpp"
#include "frobtau/tau.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ft {

using TimePair = std::pair<TimeIndex, TimeIndex>;

// eps^2 sum a d d + sum b t d + eps^-2 sum c t t + constant, with every time index p <= max_level.
// a and c are keyed by ordered pairs (first <= second) and hold the full coefficient of the product.
struct VirasoroOperator {
    int n = 1;
    int index = 0;
    int max_level = 0;
    std::map<TimePair, Scalar> a;
    std::map<TimePair, Scalar> b;  // (multiplied time, differentiated time)
    std::map<TimePair, Scalar> c;
    Scalar constant;

    std::string str() const;
    friend bool operator==(const VirasoroOperator&, const VirasoroOperator&) = default;
};

// KdV: every m (L_{-m}, m > 1, included); CP1: m >= -1.
VirasoroOperator virasoro_operator(const FrobeniusModel& m, int index, int max_level);

VirasoroOperator operator_sum(const VirasoroOperator& x, const VirasoroOperator& y);
VirasoroOperator operator_scale(const VirasoroOperator& x, const Scalar& s);

// Exact action on a polynomial series. Throws when a multiplied time exceeds the series levels
// while its partner derivative is nonzero.
TauSeries apply(const VirasoroOperator& L, const TauSeries& tau);

struct CommutatorReport {
    int monomials = 0;
    int failures = 0;
    std::vector<std::string> examples;
};
// [L_i, L_j] - (i - j) L_{i+j} - central term on every monomial of total degree <= degree in
// t^{alpha,p}, p <= level.
CommutatorReport commutator_check(const FrobeniusModel& m, int i, int j, int degree, int level);

// log tau = sum_g eps^{2g-2} F[g]; residual of L_m(eps^{-1} t~, eps d) tau / tau per genus,
// with t~ = t - shift. Coefficients involving a time whose partner derivative lies beyond the
// series levels are contaminated and excluded.
struct ConstraintResidual {
    int m = 0;
    std::vector<TauSeries> by_genus;
    std::vector<int> contaminating;  // series variable ids
    bool contaminated(const TauSeries::Key& k) const;
    // uncontaminated nonzero coefficients
    std::vector<std::pair<int, TauSeries::Key>> failures() const;
};
ConstraintResidual constraint_residual(const FrobeniusModel& model, int index, const std::vector<TauSeries>& F,
                                       const std::map<TimeIndex, Scalar>& shift);

}  // namespace ft
