#pragma once

#include "frobtau/scalar.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ft {

enum class AtomKind : std::uint8_t {
    Eps = 0,    // formal epsilon
    Jet = 1,    // v^{a,b}: flat coordinate a, jet order b
    Exp = 2,    // exp(v^a); powers are exp(k v^a)
    Canon = 3,  // u_a^{(b)}: canonical coordinate jets
    Diff = 4,   // u_a - u_b, a < b
    Sigma = 5,  // (v^a - lambda)^{-1/2}
    Test = 6,   // test function a (0,1,2), component b, derivative c
};

struct Atom {
    AtomKind kind = AtomKind::Eps;
    std::int16_t a = 0;
    std::int16_t b = 0;
    std::int16_t c = 0;

    static Atom eps() { return {AtomKind::Eps, 0, 0, 0}; }
    static Atom jet(int alpha, int s) { return {AtomKind::Jet, static_cast<std::int16_t>(alpha), static_cast<std::int16_t>(s), 0}; }
    static Atom exp(int gamma) { return {AtomKind::Exp, static_cast<std::int16_t>(gamma), 0, 0}; }
    static Atom canon(int i, int s) { return {AtomKind::Canon, static_cast<std::int16_t>(i), static_cast<std::int16_t>(s), 0}; }
    static Atom diff(int i, int j) { return {AtomKind::Diff, static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), 0}; }
    static Atom sigma(int alpha) { return {AtomKind::Sigma, static_cast<std::int16_t>(alpha), 0, 0}; }
    static Atom test(int which, int comp, int s) {
        return {AtomKind::Test, static_cast<std::int16_t>(which), static_cast<std::int16_t>(comp), static_cast<std::int16_t>(s)};
    }

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
        if (auto c = x.kind <=> y.kind; c != 0) return c;
        if (auto c = x.a <=> y.a; c != 0) return c;
        // higher jet order first within one component
        if (auto c = y.b <=> x.b; c != 0) return c;
        return x.c <=> y.c;
    }
};

class Monomial {
public:
    using Factor = std::pair<Atom, Frac>;

    Monomial() = default;
    explicit Monomial(Atom a, Frac k = Frac(1));

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    Frac power(const Atom& a) const;
    // multiply by a^k
    Monomial times(const Atom& a, Frac k) const;
    Monomial without(const Atom& a) const;

    friend Monomial operator*(const Monomial& x, const Monomial& y);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& x, const Monomial& y) {
        return std::lexicographical_compare(x.f_.begin(), x.f_.end(), y.f_.begin(), y.f_.end(),
                                            [](const Factor& p, const Factor& q) {
                                                if (p.first != q.first) return p.first < q.first;
                                                return p.second < q.second;
                                            });
    }

    // sum of s over jets v^{a,s}, u_a^{(s)} minus the epsilon power
    Frac jet_degree() const;
    std::int64_t eps_power() const;
    std::string str() const;

private:
    std::vector<Factor> f_;
};

class JetPoly {
public:
    using Terms = std::map<Monomial, Scalar>;

    JetPoly() = default;
    JetPoly(const Scalar& c);
    JetPoly(long c) : JetPoly(Scalar(c)) {}
    JetPoly(int c) : JetPoly(Scalar(static_cast<long>(c))) {}
    JetPoly(const Monomial& m, const Scalar& c = Scalar(1));

    static JetPoly v(int alpha, int s = 0) { return JetPoly(Monomial(Atom::jet(alpha, s))); }
    static JetPoly expv(int gamma, Frac k = Frac(1)) { return JetPoly(Monomial(Atom::exp(gamma), k)); }
    static JetPoly eps(int k = 1) { return k == 0 ? JetPoly(1) : JetPoly(Monomial(Atom::eps(), Frac(k))); }
    static JetPoly atom(Atom a, Frac k = Frac(1)) { return JetPoly(Monomial(a, k)); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    Scalar constant_term() const;
    bool is_monomial() const { return t_.size() == 1; }
    // all exponents non-negative integers (exp powers may be any rational)
    bool is_polynomial() const;
    std::size_t size() const { return t_.size(); }

    void add(const Monomial& m, const Scalar& c);
    JetPoly& operator+=(const JetPoly& o);
    JetPoly& operator-=(const JetPoly& o);
    JetPoly& operator*=(const Scalar& c);
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { a += b; return a; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { a -= b; return a; }
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
    friend JetPoly operator*(JetPoly a, const Scalar& c) { a *= c; return a; }
    friend JetPoly operator*(const Scalar& c, JetPoly a) { a *= c; return a; }
    JetPoly operator-() const;
    friend bool operator==(const JetPoly&, const JetPoly&) = default;

    // non-negative integer powers; negative or fractional only for monomials
    JetPoly pow(Frac k) const;

    std::string str() const;

private:
    Terms t_;
};

// Total x-derivative and its iterates.
JetPoly dx(const JetPoly& p);
JetPoly dx(const JetPoly& p, int k);
JetPoly dx_atom(const Atom& a);

// Partial derivative in a jet variable: Atom::jet(alpha, s) or Atom::canon(i, s).
JetPoly partial(const JetPoly& p, const Atom& var);
// Partial derivative in epsilon.
int max_jet_order(const JetPoly& p, int alpha);
int max_component(const JetPoly& p);

JetPoly variational(const JetPoly& p, int alpha);

struct IbpResult {
    JetPoly reduced;
    std::optional<JetPoly> primitive;
};
IbpResult integrate_by_parts(const JetPoly& p);

// Antiderivative in v^alpha (order 0); nullopt when a term has no elementary primitive here.
std::optional<JetPoly> integrate_in(const JetPoly& p, int alpha);

// Keep terms with epsilon power <= k.
JetPoly eps_truncate(const JetPoly& p, int k);
// Coefficient of eps^k (epsilon removed).
JetPoly eps_part(const JetPoly& p, int k);
int max_eps_power(const JetPoly& p);
int min_eps_power(const JetPoly& p);

// Replace v^{a,s} by d_x^s images[a-1] (exp atoms are rejected). Result truncated
// to epsilon power <= max_eps when max_eps >= 0.
JetPoly substitute_jets(const JetPoly& p, const std::vector<JetPoly>& images, int max_eps = -1);

// Generic substitution: each atom is mapped to a replacement (or kept when nullopt);
// negative or fractional powers require monomial replacements.
JetPoly substitute_atoms(const JetPoly& p, const std::function<std::optional<JetPoly>(const Atom&)>& f,
                         int max_eps = -1);

// Replace epsilon^2 by factor*epsilon^2 (odd powers get an exact square root when possible).
JetPoly rescale_eps2(const JetPoly& p, const Scalar& factor);

std::string atom_str(const Atom& a);

inline std::ostream& operator<<(std::ostream& os, const JetPoly& x) { return os << x.str(); }

}  // namespace ft
