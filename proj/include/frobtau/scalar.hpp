#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ft {

// Small exact rational for exponents (jet powers, exp multipliers).
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Frac() = default;
    Frac(std::int64_t n) : num(n), den(1) {}
    Frac(std::int64_t n, std::int64_t d);

    bool is_integer() const { return den == 1; }
    bool is_zero() const { return num == 0; }
    mpq_class to_mpq() const { return mpq_class(mpz_class(num), mpz_class(den)); }
    std::string str() const;

    friend Frac operator+(Frac a, Frac b);
    friend Frac operator-(Frac a, Frac b);
    friend Frac operator*(Frac a, Frac b);
    friend Frac operator/(Frac a, Frac b);
    Frac operator-() const { return Frac(-num, den); }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
    friend auto operator<=>(const Frac& a, const Frac& b) {
        return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
    }
};

// Algebraic generators g with g^2 = square (a nonzero rational).
// "i" and "sqrt2" are always present; sqrtN is registered on demand.
int generator_count();
const std::string& generator_name(int k);
const mpq_class& generator_square(int k);
int generator_index(const std::string& name);  // -1 if unknown
int sqrt_generator(long d);                    // d squarefree, d != 0, 1

// Element of Q(g_0, g_1, ...), stored as sum over subsets of generators.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) { if (v != 0) terms_.push_back({0u, mpq_class(v)}); }
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    Scalar(const mpq_class& q) { if (q != 0) { terms_.push_back({0u, q}); terms_[0].second.canonicalize(); } }
    Scalar(long n, long d) : Scalar(mpq_class(n, d)) { }
    Scalar(const Frac& f) : Scalar(f.to_mpq()) {}

    static Scalar generator(int k);
    static Scalar rational(const std::string& text);
    // sqrt of a rational, as r*sqrtN (or r*i*sqrtN for negatives).
    static Scalar sqrt_of(const mpq_class& q);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    mpq_class rational_value() const;  // throws unless is_rational()
    bool is_one() const { return is_rational() && rational_value() == 1; }

    Scalar inverse() const;
    Scalar conjugate(int k) const;  // g_k -> -g_k

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar operator-() const;
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const Scalar& a, const Scalar& b);

    // "p/q", "p/q*g", "(a + b*g)".
    std::string str() const;
    bool needs_parens() const { return terms_.size() > 1; }
    const std::vector<std::pair<std::uint32_t, mpq_class>>& terms() const { return terms_; }

private:
    std::vector<std::pair<std::uint32_t, mpq_class>> terms_;  // sorted by mask
    void add_term(std::uint32_t mask, const mpq_class& c);
};

// Exact q-th power of a scalar; rational exponents need an exact root
// (square roots may introduce a sqrt generator). Throws otherwise.
Scalar scalar_pow(const Scalar& base, Frac q);
mpq_class rational_pow(const mpq_class& base, std::int64_t k);
mpq_class factorial(long n);
mpq_class binomial(const mpq_class& q, long k);

std::string mpq_str(const mpq_class& q);

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

}  // namespace ft
