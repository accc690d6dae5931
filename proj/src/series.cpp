#include "frobtau/series.hpp"

#include <algorithm>

namespace ft {

namespace {

constexpr int kMaxDegree = 15;
constexpr int kMaxVars = 16;

}  // namespace

TauSeries::TauSeries(const SeriesBounds& b) : b_(b) {
    if (b.var_count() > kMaxVars) throw std::invalid_argument("too many series variables");
    if (b_.degree > kMaxDegree) b_.degree = kMaxDegree;
}

TauSeries::TauSeries(const SeriesBounds& b, const Scalar& c) : TauSeries(b) {
    if (b_.eps_lo > 0) b_.eps_lo = 0;
    add(Key{0, 0}, c);
}

TauSeries TauSeries::variable(const SeriesBounds& b, int alpha, int p) {
    TauSeries s(b);
    if (p > b.levels || alpha < 1 || alpha > b.n) throw std::out_of_range("series variable out of range");
    s.add(Key{0, std::uint64_t(1) << (4 * s.var_id(alpha, p))}, Scalar(1));
    return s;
}

TauSeries TauSeries::eps_power(const SeriesBounds& b, int k) {
    SeriesBounds bb = b;
    bb.eps_lo = std::min(b.eps_lo, k);
    TauSeries s(bb);
    s.add(Key{k, 0}, Scalar(1));
    return s;
}

int TauSeries::degree_of(std::uint64_t e) {
    int d = 0;
    while (e) {
        d += static_cast<int>(e & 0xF);
        e >>= 4;
    }
    return d;
}

Scalar TauSeries::coeff(const Key& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Scalar() : it->second;
}

Scalar TauSeries::coeff(const std::vector<std::array<int, 3>>& mono, int eps) const {
    Key k{eps, 0};
    int deg = 0;
    for (const auto& [alpha, p, e] : mono) {
        k.exps += static_cast<std::uint64_t>(e) << (4 * var_id(alpha, p));
        deg += e;
    }
    if (deg > b_.degree || eps > b_.eps_hi)
        throw TruncationInsufficient("coefficient outside truncation bounds: " + key_str(k));
    return coeff(k);
}

void TauSeries::add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    if (k.eps > b_.eps_hi || k.eps < b_.eps_lo || degree_of(k.exps) > b_.degree) return;
    auto [it, ins] = c_.try_emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

SeriesBounds TauSeries::merge_sum(const SeriesBounds& a, const SeriesBounds& b) {
    if (a.n != b.n || a.levels != b.levels) throw std::invalid_argument("series spaces differ");
    SeriesBounds r = a;
    r.degree = std::min(a.degree, b.degree);
    r.eps_lo = std::min(a.eps_lo, b.eps_lo);
    r.eps_hi = std::min(a.eps_hi, b.eps_hi);
    return r;
}

TauSeries& TauSeries::operator+=(const TauSeries& o) {
    SeriesBounds nb = merge_sum(b_, o.b_);
    if (nb.degree < b_.degree || nb.eps_hi < b_.eps_hi) {
        b_ = nb;
        std::erase_if(c_, [&](const auto& kv) {
            return kv.first.eps > b_.eps_hi || degree_of(kv.first.exps) > b_.degree;
        });
    }
    b_ = nb;
    for (const auto& [k, c] : o.c_) add(k, c);
    return *this;
}

TauSeries& TauSeries::operator-=(const TauSeries& o) { return *this += -o; }

TauSeries& TauSeries::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, c] : c_) c = c * s;
    return *this;
}

TauSeries TauSeries::operator-() const {
    TauSeries r = *this;
    for (auto& [k, c] : r.c_) c = -c;
    return r;
}

TauSeries operator*(const TauSeries& a, const TauSeries& b) {
    SeriesBounds r = TauSeries::merge_sum(a.b_, b.b_);
    r.eps_lo = a.b_.eps_lo + b.b_.eps_lo;
    r.eps_hi = std::min(a.b_.eps_hi + b.b_.eps_lo, b.b_.eps_hi + a.b_.eps_lo);
    TauSeries out(r);
    if (a.c_.empty() || b.c_.empty()) return out;
    // bucket the second factor by degree to skip hopeless pairs early
    std::vector<std::vector<std::pair<TauSeries::Key, const Scalar*>>> byDeg(r.degree + 1);
    for (const auto& [k, c] : b.c_) {
        int d = TauSeries::degree_of(k.exps);
        if (d <= r.degree) byDeg[d].push_back({k, &c});
    }
    for (const auto& [ka, ca] : a.c_) {
        int da = TauSeries::degree_of(ka.exps);
        if (da > r.degree) continue;
        for (int db = 0; db + da <= r.degree; ++db)
            for (const auto& [kb, cb] : byDeg[db]) {
                int e = ka.eps + kb.eps;
                if (e > r.eps_hi) continue;
                out.add(TauSeries::Key{e, ka.exps + kb.exps}, ca * *cb);
            }
    }
    return out;
}

TauSeries TauSeries::d(int alpha, int p) const {
    SeriesBounds nb = b_;
    nb.degree = b_.degree - 1;
    TauSeries out(nb);
    if (p > b_.levels) return out;
    int id = var_id(alpha, p);
    std::uint64_t unit = std::uint64_t(1) << (4 * id);
    for (const auto& [k, c] : c_) {
        int e = power_of(k.exps, id);
        if (e == 0) continue;
        out.add(Key{k.eps, k.exps - unit}, c * Scalar(static_cast<long>(e)));
    }
    return out;
}

TauSeries TauSeries::times_var(int alpha, int p) const {
    SeriesBounds nb = b_;
    nb.degree = std::min(b_.degree + 1, kMaxDegree);
    TauSeries out(nb);
    std::uint64_t unit = std::uint64_t(1) << (4 * var_id(alpha, p));
    for (const auto& [k, c] : c_) {
        if (power_of(k.exps, var_id(alpha, p)) == 15) throw TruncationInsufficient("exponent overflow");
        out.add(Key{k.eps, k.exps + unit}, c);
    }
    return out;
}

TauSeries TauSeries::times_eps(int k) const {
    SeriesBounds nb = b_;
    nb.eps_lo += k;
    nb.eps_hi += k;
    TauSeries out(nb);
    for (const auto& [key, c] : c_) out.add(Key{key.eps + k, key.exps}, c);
    return out;
}

TauSeries TauSeries::with_degree(int D) const {
    SeriesBounds nb = b_;
    nb.degree = std::min(D, b_.degree);
    TauSeries out(nb);
    for (const auto& [k, c] : c_) out.add(k, c);
    return out;
}

TauSeries TauSeries::with_eps_hi(int e) const {
    SeriesBounds nb = b_;
    nb.eps_hi = std::min(e, b_.eps_hi);
    TauSeries out(nb);
    for (const auto& [k, c] : c_) out.add(k, c);
    return out;
}

TauSeries TauSeries::pow_int(long k) const {
    if (k < 0) return pow(Frac(k));
    SeriesBounds one = b_;
    one.eps_lo = std::min(0, one.eps_lo);
    TauSeries r(one, Scalar(1)), base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

namespace {

void require_small(const TauSeries& s, const char* what) {
    if (s.bounds().eps_lo < 0) throw std::domain_error(std::string(what) + ": negative epsilon powers");
    for (const auto& [k, c] : s.terms())
        if (k.exps == 0 && k.eps <= 0) throw std::domain_error(std::string(what) + ": nonzero constant term");
}

}  // namespace

TauSeries TauSeries::exp() const {
    require_small(*this, "exp");
    SeriesBounds one = b_;
    TauSeries out(one, Scalar(1));
    TauSeries term(one, Scalar(1));
    for (long k = 1; k <= b_.degree + std::max(b_.eps_hi, 0) + 1; ++k) {
        term = term * *this * Scalar(mpq_class(1, k));
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

TauSeries TauSeries::log() const {
    Scalar c0 = constant_term();
    if (c0.is_zero()) throw std::domain_error("log of a series with zero constant term");
    TauSeries r = *this * c0.inverse();
    r -= TauSeries(b_, Scalar(1));
    TauSeries out(r.bounds());
    TauSeries term(r.bounds(), Scalar(1));
    for (long k = 1; k <= b_.degree + std::max(b_.eps_hi, 0) + 1; ++k) {
        term = term * r;
        if (term.is_zero()) break;
        out += term * Scalar(mpq_class(k % 2 ? 1 : -1, k));
    }
    return out;
}

TauSeries TauSeries::pow(Frac q) const {
    Scalar c0 = constant_term();
    if (c0.is_zero()) throw std::domain_error("power of a series with zero constant term");
    TauSeries r = *this * c0.inverse();
    r -= TauSeries(b_, Scalar(1));
    require_small(r, "pow");
    TauSeries out(r.bounds(), Scalar(1));
    TauSeries term(r.bounds(), Scalar(1));
    mpq_class qq = q.to_mpq();
    mpq_class binom = 1;
    for (long k = 1; k <= b_.degree + std::max(b_.eps_hi, 0) + 1; ++k) {
        term = term * r;
        if (term.is_zero()) break;
        binom *= (qq - (k - 1)) / k;
        out += term * Scalar(binom);
    }
    return out * scalar_pow(c0, q);
}

std::vector<std::pair<TauSeries::Key, Scalar>> TauSeries::sorted() const {
    std::vector<std::pair<Key, Scalar>> v(c_.begin(), c_.end());
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        if (x.first.eps != y.first.eps) return x.first.eps < y.first.eps;
        int dx = degree_of(x.first.exps), dy = degree_of(y.first.exps);
        if (dx != dy) return dx < dy;
        return x.first.exps < y.first.exps;
    });
    return v;
}

std::string TauSeries::key_str(const Key& k) const {
    std::string out;
    for (int p = 0; p <= b_.levels; ++p)
        for (int a = 1; a <= b_.n; ++a) {
            int e = power_of(k.exps, var_id(a, p));
            if (!e) continue;
            if (!out.empty()) out += "*";
            out += b_.n == 1 ? "t" + std::to_string(p) : "t[" + std::to_string(a) + "," + std::to_string(p) + "]";
            if (e > 1) out += "^" + std::to_string(e);
        }
    if (k.eps != 0) {
        if (!out.empty()) out += "*";
        out += k.eps == 1 ? "eps" : k.eps > 0 ? "eps^" + std::to_string(k.eps) : "eps^(" + std::to_string(k.eps) + ")";
    }
    return out.empty() ? "1" : out;
}

std::string TauSeries::str() const {
    std::string out;
    for (const auto& [k, c] : sorted()) {
        if (!out.empty()) out += " + ";
        out += c.str() + "*" + key_str(k);
    }
    return out.empty() ? "0" : out;
}

bool TauSeries::same_coefficients(const TauSeries& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (const auto& [k, c] : c_) {
        auto it = o.c_.find(k);
        if (it == o.c_.end() || !(it->second == c)) return false;
    }
    return true;
}

SeriesEvaluator::SeriesEvaluator(std::vector<TauSeries> sol, int x_alpha, int x_level)
    : sol_(std::move(sol)), xa_(x_alpha), xl_(x_level) {}

const TauSeries& SeriesEvaluator::atom_value(const Atom& a) {
    if (auto it = atoms_.find(a); it != atoms_.end()) return it->second;
    TauSeries v;
    switch (a.kind) {
        case AtomKind::Jet:
            if (a.b == 0) {
                v = sol_.at(a.a - 1);
            } else {
                v = atom_value(Atom::jet(a.a, a.b - 1)).d(xa_, xl_);
            }
            break;
        case AtomKind::Eps: v = TauSeries::eps_power(bounds(), 1); break;
        case AtomKind::Exp: {
            const TauSeries& base = atom_value(Atom::jet(a.a, 0));
            if (!base.constant_term().is_zero()) throw std::domain_error("exp of a series with nonzero constant term");
            v = base.exp();
            break;
        }
        default:
            if (!extra_) throw std::domain_error("no series value for atom " + atom_str(a));
            v = extra_(a);
    }
    if (cap_ >= 0) v = v.with_degree(cap_);
    return atoms_.emplace(a, std::move(v)).first->second;
}

TauSeries SeriesEvaluator::power(const Atom& a, Frac k) {
    auto key = std::make_pair(a, k);
    if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    TauSeries r;
    if (a.kind == AtomKind::Eps) {
        r = TauSeries::eps_power(bounds(), static_cast<int>(k.num));
    } else if (a.kind == AtomKind::Exp) {
        const TauSeries& base = atom_value(Atom::jet(a.a, 0));
        if (!base.constant_term().is_zero()) throw std::domain_error("exp of a series with nonzero constant term");
        r = (base * Scalar(k)).exp();
        if (cap_ >= 0) r = r.with_degree(cap_);
    } else if (k.is_integer() && k.num > 0) {
        r = atom_value(a).pow_int(k.num);
    } else {
        r = atom_value(a).pow(k);
    }
    powers_.emplace(key, r);
    return r;
}

TauSeries SeriesEvaluator::eval(const JetPoly& p) {
    SeriesBounds b = bounds();
    if (cap_ >= 0) b.degree = std::min(b.degree, cap_);
    TauSeries out(b);
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        SeriesBounds one = b;
        one.eps_lo = std::min(0, one.eps_lo);
        TauSeries term(one, c);
        for (const auto& [a, k] : m.factors()) term = term * power(a, k);
        if (first) {
            out = term;
            first = false;
        } else {
            out += term;
        }
    }
    return out;
}

TauSeries evaluate_on_solution(const JetPoly& p, const std::vector<TauSeries>& sol, int x_alpha, int x_level) {
    SeriesEvaluator ev(sol, x_alpha, x_level);
    return ev.eval(p);
}

}  // namespace ft
