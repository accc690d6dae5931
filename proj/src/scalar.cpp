#include "frobtau/scalar.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ft {

Frac::Frac(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::string Frac::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Frac operator+(Frac a, Frac b) { return Frac(a.num * b.den + b.num * a.den, a.den * b.den); }
Frac operator-(Frac a, Frac b) { return Frac(a.num * b.den - b.num * a.den, a.den * b.den); }
Frac operator*(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
Frac operator/(Frac a, Frac b) { return Frac(a.num * b.den, a.den * b.num); }

namespace {

struct Registry {
    std::mutex mu;
    std::vector<std::string> names{"i", "sqrt2"};
    std::vector<mpq_class> squares{mpq_class(-1), mpq_class(2)};
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

int generator_count() {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return static_cast<int>(r.names.size());
}

const std::string& generator_name(int k) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(k);
}

const mpq_class& generator_square(int k) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.squares.at(k);
}

int generator_index(const std::string& name) {
    auto& r = registry();
    {
        std::lock_guard lock(r.mu);
        for (std::size_t k = 0; k < r.names.size(); ++k)
            if (r.names[k] == name) return static_cast<int>(k);
    }
    if (name.rfind("sqrt", 0) == 0 && name.size() > 4 &&
        std::all_of(name.begin() + 4, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        long d = std::stol(name.substr(4));
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) return -1;
        if (d > 1) return sqrt_generator(d);
    }
    return -1;
}

int sqrt_generator(long d) {
    if (d == -1) return 0;
    if (d == 0 || d == 1) throw std::invalid_argument("sqrt generator of 0 or 1");
    if (d < 0) throw std::invalid_argument("negative sqrt generator; use i*sqrtN");
    auto& r = registry();
    std::lock_guard lock(r.mu);
    std::string name = "sqrt" + std::to_string(d);
    for (std::size_t k = 0; k < r.names.size(); ++k)
        if (r.names[k] == name) return static_cast<int>(k);
    if (r.names.size() >= 31) throw std::length_error("too many algebraic generators");
    r.names.push_back(name);
    r.squares.push_back(mpq_class(d));
    return static_cast<int>(r.names.size() - 1);
}

Scalar Scalar::generator(int k) {
    Scalar s;
    s.terms_.push_back({1u << k, mpq_class(1)});
    return s;
}

Scalar Scalar::rational(const std::string& text) {
    mpq_class q(text);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::sqrt_of(const mpq_class& q) {
    if (q == 0) return Scalar();
    // sqrt(a/b) = sqrt(a*b)/b; pull square factors out of a*b.
    mpz_class m = abs(q.get_num() * q.get_den());
    mpz_class outside = 1;
    mpz_class rest = 1;
    mpz_class p = 2;
    while (p * p <= m) {
        while (m % (p * p) == 0) { m /= p * p; outside *= p; }
        if (m % p == 0) { m /= p; rest *= p; }
        p += 1;
    }
    rest *= m;
    Scalar out(mpq_class(outside, q.get_den()));
    if (rest != 1) out = out * Scalar::generator(sqrt_generator(rest.get_si()));
    if (q < 0) out = out * Scalar::generator(0);
    return out;
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
    return terms_.empty() ? mpq_class(0) : terms_[0].second;
}

void Scalar::add_term(std::uint32_t mask, const mpq_class& c) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const auto& t, std::uint32_t m) { return t.first < m; });
    if (it != terms_.end() && it->first == mask) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else if (c != 0) {
        terms_.insert(it, {mask, c});
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1 && a.terms_[0].first == 0 && b.terms_[0].first == 0) {
        r.terms_.push_back({0u, a.terms_[0].second * b.terms_[0].second});
        return r;
    }
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            mpq_class c = ca * cb;
            std::uint32_t both = ma & mb;
            for (int k = 0; both; ++k, both >>= 1)
                if (both & 1u) c *= generator_square(k);
            r.add_term(ma ^ mb, c);
        }
    }
    return r;
}

bool operator<(const Scalar& a, const Scalar& b) {
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                            if (x.first != y.first) return x.first < y.first;
                                            return x.second < y.second;
                                        });
}

Scalar Scalar::conjugate(int k) const {
    Scalar r = *this;
    for (auto& t : r.terms_)
        if (t.first & (1u << k)) t.second = -t.second;
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Scalar num(1);
    Scalar den = *this;
    std::uint32_t used = 0;
    for (const auto& t : terms_) used |= t.first;
    for (int k = 0; used >> k; ++k) {
        if (!((used >> k) & 1u)) continue;
        Scalar c = den.conjugate(k);
        num = num * c;
        den = den * c;
    }
    return num * Scalar(mpq_class(1) / den.rational_value());
}

std::string mpq_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string g;
        for (int k = 0; (m >> k) != 0; ++k)
            if ((m >> k) & 1u) g += "*" + generator_name(k);
        if (first) {
            out += mpq_str(c) + g;
        } else if (c < 0) {
            out += " - " + mpq_str(-c) + g;
        } else {
            out += " + " + mpq_str(c) + g;
        }
        first = false;
    }
    return terms_.size() > 1 ? "(" + out + ")" : out;
}

mpq_class rational_pow(const mpq_class& base, std::int64_t k) {
    if (k < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return rational_pow(mpq_class(1) / base, -k);
    }
    mpq_class r = 1, b = base;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

namespace {

bool exact_root(const mpz_class& v, unsigned long n, mpz_class& out) {
    if (v < 0) {
        if (n % 2 == 0) return false;
        mpz_class r;
        if (!exact_root(-v, n, r)) return false;
        out = -r;
        return true;
    }
    return mpz_root(out.get_mpz_t(), v.get_mpz_t(), n) != 0;
}

}  // namespace

Scalar scalar_pow(const Scalar& base, Frac q) {
    if (q.is_integer()) {
        std::int64_t k = q.num;
        Scalar b = k < 0 ? base.inverse() : base;
        if (k < 0) k = -k;
        Scalar r(1);
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }
    mpq_class v = base.rational_value();
    mpz_class rn, rd;
    if (exact_root(v.get_num(), static_cast<unsigned long>(q.den), rn) &&
        exact_root(v.get_den(), static_cast<unsigned long>(q.den), rd))
        return scalar_pow(Scalar(mpq_class(rn, rd)), Frac(q.num));
    if (q.den == 2) return scalar_pow(Scalar::sqrt_of(v), Frac(q.num));
    throw std::domain_error("no exact root for " + mpq_str(v) + "^" + q.str());
}

mpq_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return mpq_class(r);
}

mpq_class binomial(const mpq_class& q, long k) {
    mpq_class r = 1;
    for (long j = 0; j < k; ++j) r *= (q - j) / (j + 1);
    return r;
}

}  // namespace ft
