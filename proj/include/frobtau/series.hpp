#pragma once

#include "frobtau/jet.hpp"
#include "frobtau/scalar.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace ft {

struct TruncationInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation data. Coefficients are exact for total t-degree <= degree and
// epsilon power <= eps_hi; every stored term has epsilon power >= eps_lo.
struct SeriesBounds {
    int n = 1;
    int levels = 0;  // t^{alpha,p} with p <= levels
    int degree = 0;
    int eps_lo = 0;
    int eps_hi = 0;
    int var_count() const { return n * (levels + 1); }
};

class TauSeries {
public:
    struct Key {
        int eps = 0;
        std::uint64_t exps = 0;  // 4 bits per variable, variable id = p*n + alpha - 1
        friend bool operator==(const Key&, const Key&) = default;
        friend bool operator<(const Key& a, const Key& b) {
            return a.eps != b.eps ? a.eps < b.eps : a.exps < b.exps;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<std::uint64_t>()(k.exps * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k.eps));
        }
    };
    using Map = std::unordered_map<Key, Scalar, KeyHash>;

    TauSeries() = default;
    explicit TauSeries(const SeriesBounds& b);
    TauSeries(const SeriesBounds& b, const Scalar& c);

    static TauSeries variable(const SeriesBounds& b, int alpha, int p);
    static TauSeries eps_power(const SeriesBounds& b, int k);

    const SeriesBounds& bounds() const { return b_; }
    const Map& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int var_id(int alpha, int p) const { return p * b_.n + alpha - 1; }

    Scalar coeff(const Key& k) const;
    // exponents as (alpha, p, power) triples
    Scalar coeff(const std::vector<std::array<int, 3>>& mono, int eps = 0) const;
    Scalar constant_term() const { return coeff(Key{0, 0}); }
    void add(const Key& k, const Scalar& c);

    static int degree_of(std::uint64_t exps);
    static int power_of(std::uint64_t exps, int id) { return static_cast<int>((exps >> (4 * id)) & 0xF); }

    TauSeries& operator+=(const TauSeries& o);
    TauSeries& operator-=(const TauSeries& o);
    TauSeries& operator*=(const Scalar& s);
    friend TauSeries operator+(TauSeries a, const TauSeries& b) { a += b; return a; }
    friend TauSeries operator-(TauSeries a, const TauSeries& b) { a -= b; return a; }
    friend TauSeries operator*(TauSeries a, const Scalar& s) { a *= s; return a; }
    friend TauSeries operator*(const Scalar& s, TauSeries a) { a *= s; return a; }
    friend TauSeries operator*(const TauSeries& a, const TauSeries& b);
    TauSeries operator-() const;

    TauSeries d(int alpha, int p) const;
    TauSeries times_var(int alpha, int p) const;
    TauSeries times_eps(int k) const;
    TauSeries with_degree(int D) const;
    TauSeries with_eps_hi(int e) const;
    // Drop every term whose total degree exceeds D without claiming extra precision.
    TauSeries pow_int(long k) const;

    // Exact series functions. exp requires no constant term; log and pow need a
    // nonzero constant term (log drops the additive log of that constant).
    TauSeries exp() const;
    TauSeries log() const;
    TauSeries pow(Frac q) const;

    // Deterministic listing: sorted by epsilon power then by degree and exponents.
    std::vector<std::pair<Key, Scalar>> sorted() const;
    std::string key_str(const Key& k) const;
    std::string str() const;

    // equality of coefficients only
    bool same_coefficients(const TauSeries& o) const;

private:
    SeriesBounds b_;
    Map c_;
    static SeriesBounds merge_sum(const SeriesBounds& a, const SeriesBounds& b);
};

// Substitute a JetPoly into series: v^{alpha,s} -> d_x^s sol[alpha-1] where
// d_x = d/dt^{x_alpha, x_level}; exp(k v^g) via the series exponential. Atoms of
// other kinds are resolved by `extra` (canonical jets, differences).
class SeriesEvaluator {
public:
    SeriesEvaluator(std::vector<TauSeries> sol, int x_alpha = 1, int x_level = 0);
    void set_extra(std::function<TauSeries(const Atom&)> extra) { extra_ = std::move(extra); }
    // cap the degree of every atom value (valid when only low degrees are needed)
    void set_degree_cap(int D) { cap_ = D; }
    const TauSeries& atom_value(const Atom& a);
    TauSeries power(const Atom& a, Frac k);
    TauSeries eval(const JetPoly& p);
    const SeriesBounds& bounds() const { return sol_.at(0).bounds(); }

private:
    std::vector<TauSeries> sol_;
    int xa_, xl_;
    int cap_ = -1;
    std::function<TauSeries(const Atom&)> extra_;
    std::map<Atom, TauSeries> atoms_;
    std::map<std::pair<Atom, Frac>, TauSeries> powers_;
};

TauSeries evaluate_on_solution(const JetPoly& p, const std::vector<TauSeries>& sol, int x_alpha = 1, int x_level = 0);

inline std::ostream& operator<<(std::ostream& os, const TauSeries& x) { return os << x.str(); }

}  // namespace ft
