#include "frobtau/jet.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ft {

Monomial::Monomial(Atom a, Frac k) {
    if (!k.is_zero()) f_.push_back({a, k});
}

Frac Monomial::power(const Atom& a) const {
    for (const auto& [x, k] : f_)
        if (x == a) return k;
    return Frac(0);
}

Monomial Monomial::times(const Atom& a, Frac k) const {
    Monomial r = *this;
    auto it = std::lower_bound(r.f_.begin(), r.f_.end(), a, [](const Factor& p, const Atom& x) { return p.first < x; });
    if (it != r.f_.end() && it->first == a) {
        it->second = it->second + k;
        if (it->second.is_zero()) r.f_.erase(it);
    } else if (!k.is_zero()) {
        r.f_.insert(it, {a, k});
    }
    return r;
}

Monomial Monomial::without(const Atom& a) const {
    Monomial r = *this;
    std::erase_if(r.f_, [&](const Factor& p) { return p.first == a; });
    return r;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial r;
    r.f_.reserve(x.f_.size() + y.f_.size());
    auto i = x.f_.begin();
    auto j = y.f_.begin();
    while (i != x.f_.end() || j != y.f_.end()) {
        if (j == y.f_.end() || (i != x.f_.end() && i->first < j->first)) {
            r.f_.push_back(*i++);
        } else if (i == x.f_.end() || j->first < i->first) {
            r.f_.push_back(*j++);
        } else {
            Frac k = i->second + j->second;
            if (!k.is_zero()) r.f_.push_back({i->first, k});
            ++i;
            ++j;
        }
    }
    return r;
}

Frac Monomial::jet_degree() const {
    Frac d(0);
    for (const auto& [a, k] : f_) {
        if (a.kind == AtomKind::Jet || a.kind == AtomKind::Canon) d = d + k * Frac(a.b);
        if (a.kind == AtomKind::Test) d = d + k * Frac(a.c);
        if (a.kind == AtomKind::Eps) d = d - k;
    }
    return d;
}

std::int64_t Monomial::eps_power() const {
    Frac k = power(Atom::eps());
    return k.num;
}

std::string atom_str(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Eps: return "eps";
        case AtomKind::Jet:
            return a.b == 0 ? "v[" + std::to_string(a.a) + "]"
                            : "v[" + std::to_string(a.a) + "," + std::to_string(a.b) + "]";
        case AtomKind::Exp: return "exp(v[" + std::to_string(a.a) + "])";
        case AtomKind::Canon:
            return a.b == 0 ? "u[" + std::to_string(a.a) + "]"
                            : "u[" + std::to_string(a.a) + "," + std::to_string(a.b) + "]";
        case AtomKind::Diff: return "U[" + std::to_string(a.a) + "," + std::to_string(a.b) + "]";
        case AtomKind::Sigma: return "sigma[" + std::to_string(a.a) + "]";
        case AtomKind::Test: {
            static const char* names[] = {"phi", "psi", "chi"};
            return std::string(names[a.a]) + "[" + std::to_string(a.b) + "," + std::to_string(a.c) + "]";
        }
    }
    return "?";
}

std::string Monomial::str() const {
    std::string out;
    for (const auto& [a, k] : f_) {
        if (!out.empty()) out += "*";
        if (a.kind == AtomKind::Exp) {
            out += k == Frac(1) ? "exp(v[" + std::to_string(a.a) + "])"
                                : "exp(" + k.str() + "*v[" + std::to_string(a.a) + "])";
            continue;
        }
        out += atom_str(a);
        if (!(k == Frac(1))) out += k.is_integer() && k.num > 0 ? "^" + k.str() : "^(" + k.str() + ")";
    }
    return out.empty() ? "1" : out;
}

JetPoly::JetPoly(const Scalar& c) {
    if (!c.is_zero()) t_.emplace(Monomial(), c);
}

JetPoly::JetPoly(const Monomial& m, const Scalar& c) {
    if (!c.is_zero()) t_.emplace(m, c);
}

Scalar JetPoly::constant_term() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? Scalar() : it->second;
}

bool JetPoly::is_polynomial() const {
    for (const auto& [m, c] : t_)
        for (const auto& [a, k] : m.factors())
            if (a.kind != AtomKind::Exp && (!k.is_integer() || k.num < 0)) return false;
    return true;
}

void JetPoly::add(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
}

JetPoly& JetPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, x] : t_) x = x * c;
    return *this;
}

JetPoly JetPoly::operator-() const {
    JetPoly r = *this;
    for (auto& [m, x] : r.t_) x = -x;
    return r;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add(ma * mb, ca * cb);
    return r;
}

JetPoly JetPoly::pow(Frac k) const {
    if (k.is_integer() && k.num >= 0) {
        JetPoly r(1), b = *this;
        std::int64_t e = k.num;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
    if (t_.size() != 1) throw std::domain_error("negative or fractional power of a non-monomial: " + str());
    const auto& [m, c] = *t_.begin();
    Monomial out;
    for (const auto& [a, e] : m.factors()) out = out.times(a, e * k);
    return JetPoly(out, scalar_pow(c, k));
}

std::string JetPoly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : t_) {
        std::string cs;
        bool neg = false;
        Scalar cc = c;
        if (c.is_rational() && c.rational_value() < 0) {
            neg = true;
            cc = -c;
        }
        if (m.is_one()) {
            cs = cc.str();
        } else if (cc.is_one()) {
            cs = m.str();
        } else {
            cs = cc.str() + "*" + m.str();
        }
        if (first) {
            out += neg ? "-" + cs : cs;
        } else {
            out += neg ? " - " + cs : " + " + cs;
        }
        first = false;
    }
    return out;
}

JetPoly dx_atom(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Eps: return JetPoly();
        case AtomKind::Jet: return JetPoly::v(a.a, a.b + 1);
        case AtomKind::Exp: return JetPoly::v(a.a, 1) * JetPoly::atom(a);
        case AtomKind::Canon: return JetPoly::atom(Atom::canon(a.a, a.b + 1));
        case AtomKind::Diff: return JetPoly::atom(Atom::canon(a.a, 1)) - JetPoly::atom(Atom::canon(a.b, 1));
        case AtomKind::Sigma: return JetPoly::v(a.a, 1) * JetPoly::atom(a, Frac(3)) * Scalar(-1, 2);
        case AtomKind::Test: return JetPoly::atom(Atom::test(a.a, a.b, a.c + 1));
    }
    return JetPoly();
}

namespace {

// d(m)/d(atom a) contribution: k * m / a * da
void chain(JetPoly& out, const Monomial& m, const Scalar& c, const Atom& a, Frac k, const JetPoly& da) {
    if (da.is_zero()) return;
    Monomial rest = m.times(a, Frac(-1));
    Scalar ck = c * Scalar(k);
    for (const auto& [dm, dc] : da.terms()) out.add(rest * dm, ck * dc);
}

}  // namespace

JetPoly dx(const JetPoly& p) {
    JetPoly out;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors()) chain(out, m, c, a, k, dx_atom(a));
    return out;
}

JetPoly dx(const JetPoly& p, int k) {
    JetPoly r = p;
    for (int i = 0; i < k; ++i) r = dx(r);
    return r;
}

namespace {

JetPoly atom_partial(const Atom& a, const Atom& var) {
    if (a == var) return JetPoly(1);
    if (var.kind == AtomKind::Jet && var.b == 0) {
        if (a.kind == AtomKind::Exp && a.a == var.a) return JetPoly::atom(a);
        if (a.kind == AtomKind::Sigma && a.a == var.a) return JetPoly::atom(a, Frac(3)) * Scalar(-1, 2);
    }
    if (var.kind == AtomKind::Canon && var.b == 0 && a.kind == AtomKind::Diff) {
        if (a.a == var.a) return JetPoly(1);
        if (a.b == var.a) return JetPoly(-1);
    }
    return JetPoly();
}

}  // namespace

JetPoly partial(const JetPoly& p, const Atom& var) {
    JetPoly out;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors()) chain(out, m, c, a, k, atom_partial(a, var));
    return out;
}

int max_jet_order(const JetPoly& p, int alpha) {
    int r = -1;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors()) {
            if (a.kind == AtomKind::Jet && a.a == alpha) r = std::max(r, static_cast<int>(a.b));
            if ((a.kind == AtomKind::Exp || a.kind == AtomKind::Sigma) && a.a == alpha) r = std::max(r, 0);
        }
    return r;
}

int max_component(const JetPoly& p) {
    int r = 0;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors())
            if (a.kind == AtomKind::Jet || a.kind == AtomKind::Exp || a.kind == AtomKind::Sigma) r = std::max(r, static_cast<int>(a.a));
    return r;
}

JetPoly variational(const JetPoly& p, int alpha) {
    JetPoly out;
    int top = max_jet_order(p, alpha);
    for (int s = top; s >= 0; --s) {
        // Horner form: sum_s (-d)^s P_s
        out = -dx(out) + partial(p, Atom::jet(alpha, s));
    }
    return out;
}

namespace {

// Order-0 dependence on component beta: v^beta, exp(v^beta), sigma.
bool order_atom(const Atom& a, int beta, int order) {
    if (a.kind == AtomKind::Jet) return a.a == beta && a.b == order;
    if (order == 0 && (a.kind == AtomKind::Exp || a.kind == AtomKind::Sigma)) return a.a == beta;
    return false;
}

// Antiderivative of c*m in the variable w = v^{alpha,s}; nullopt if not elementary here.
std::optional<JetPoly> antiderivative(const Monomial& m, const Scalar& c, int alpha, int s) {
    Atom w = Atom::jet(alpha, s);
    Frac k = m.power(w);
    Frac q = s == 0 ? m.power(Atom::exp(alpha)) : Frac(0);
    if (s == 0 && !m.power(Atom::sigma(alpha)).is_zero()) return std::nullopt;
    if (q.is_zero()) {
        if (k == Frac(-1)) return std::nullopt;
        return JetPoly(m.times(w, Frac(1)), c / Scalar(k + Frac(1)));
    }
    if (!k.is_integer() || k.num < 0) return std::nullopt;
    // int w^k e^{qw} dw = e^{qw} sum_j (-1)^j k!/(k-j)! w^{k-j} / q^{j+1}
    Monomial base = m.without(w);
    JetPoly out;
    mpq_class ff = 1;
    mpq_class qq = q.to_mpq();
    for (std::int64_t j = 0; j <= k.num; ++j) {
        if (j > 0) ff *= (k.num - j + 1);
        mpq_class coef = ff / rational_pow(qq, j + 1);
        if (j % 2) coef = -coef;
        out.add(base.times(w, Frac(k.num - j)), c * Scalar(coef));
    }
    return out;
}

bool has_foreign_atoms(const Monomial& m) {
    for (const auto& [a, k] : m.factors())
        if (a.kind != AtomKind::Jet && a.kind != AtomKind::Exp && a.kind != AtomKind::Eps) return true;
    return false;
}

}  // namespace

std::optional<JetPoly> integrate_in(const JetPoly& p, int alpha) {
    JetPoly out;
    for (const auto& [m, c] : p.terms()) {
        auto a = antiderivative(m, c, alpha, 0);
        if (!a) return std::nullopt;
        out += *a;
    }
    return out;
}

IbpResult integrate_by_parts(const JetPoly& p) {
    JetPoly cur = p;
    JetPoly prim;
    int n = max_component(p);
    int top = 0;
    for (int a = 1; a <= n; ++a) top = std::max(top, max_jet_order(p, a));
    for (int N = top; N >= 1; --N) {
        for (int alpha = 1; alpha <= n; ++alpha) {
            JetPoly g;
            Atom z = Atom::jet(alpha, N);
            for (const auto& [m, c] : cur.terms()) {
                if (has_foreign_atoms(m)) continue;
                if (!(m.power(z) == Frac(1))) continue;
                bool ok = true;
                for (const auto& [a, k] : m.factors()) {
                    if (a.kind == AtomKind::Jet && a.b >= N && !(a == z)) ok = false;
                    for (int beta = 1; beta < alpha && ok; ++beta)
                        if (order_atom(a, beta, N - 1)) ok = false;
                    if (!ok) break;
                }
                if (!ok) continue;
                auto anti = antiderivative(m.times(z, Frac(-1)), c, alpha, N - 1);
                if (!anti) continue;
                g += *anti;
            }
            if (g.is_zero()) continue;
            cur -= dx(g);
            prim += g;
        }
    }
    IbpResult r;
    r.reduced = cur;
    if (cur.is_zero()) r.primitive = prim;
    return r;
}

JetPoly eps_truncate(const JetPoly& p, int k) {
    JetPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.eps_power() <= k) out.add(m, c);
    return out;
}

JetPoly eps_part(const JetPoly& p, int k) {
    JetPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.eps_power() == k) out.add(m.without(Atom::eps()), c);
    return out;
}

int max_eps_power(const JetPoly& p) {
    int r = 0;
    for (const auto& [m, c] : p.terms()) r = std::max<int>(r, static_cast<int>(m.eps_power()));
    return r;
}

int min_eps_power(const JetPoly& p) {
    int r = 0;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        int e = static_cast<int>(m.eps_power());
        r = first ? e : std::min(r, e);
        first = false;
    }
    return r;
}

JetPoly substitute_atoms(const JetPoly& p, const std::function<std::optional<JetPoly>(const Atom&)>& f, int max_eps) {
    std::map<Atom, std::optional<JetPoly>> img;
    std::map<std::pair<Atom, Frac>, JetPoly> powers;
    auto image_pow = [&](const Atom& a, Frac k) -> JetPoly {
        auto key = std::make_pair(a, k);
        if (auto it = powers.find(key); it != powers.end()) return it->second;
        auto it = img.find(a);
        if (it == img.end()) it = img.emplace(a, f(a)).first;
        JetPoly r;
        if (!it->second) {
            r = JetPoly::atom(a, k);
        } else if (k.is_integer() && k.num >= 0 && max_eps >= 0) {
            r = JetPoly(1);
            for (std::int64_t j = 0; j < k.num; ++j) r = eps_truncate(r * *it->second, max_eps);
        } else {
            r = it->second->pow(k);
        }
        powers.emplace(key, r);
        return r;
    };
    JetPoly out;
    for (const auto& [m, c] : p.terms()) {
        JetPoly term(c);
        for (const auto& [a, k] : m.factors()) {
            term = term * image_pow(a, k);
            if (max_eps >= 0) term = eps_truncate(term, max_eps);
        }
        out += term;
    }
    return out;
}

JetPoly substitute_jets(const JetPoly& p, const std::vector<JetPoly>& images, int max_eps) {
    std::map<std::pair<int, int>, JetPoly> jets;
    return substitute_atoms(
        p,
        [&](const Atom& a) -> std::optional<JetPoly> {
            if (a.kind == AtomKind::Exp) throw std::domain_error("substitute_jets: exp generator");
            if (a.kind != AtomKind::Jet) return std::nullopt;
            auto key = std::make_pair<int, int>(a.a, a.b);
            if (auto it = jets.find(key); it != jets.end()) return it->second;
            JetPoly r = dx(images.at(a.a - 1), a.b);
            if (max_eps >= 0) r = eps_truncate(r, max_eps);
            jets.emplace(key, r);
            return r;
        },
        max_eps);
}

JetPoly rescale_eps2(const JetPoly& p, const Scalar& factor) {
    JetPoly out;
    for (const auto& [m, c] : p.terms()) {
        std::int64_t e = m.eps_power();
        if (e % 2) throw std::domain_error("rescale_eps2: odd epsilon power");
        out.add(m, c * scalar_pow(factor, Frac(e / 2)));
    }
    return out;
}

}  // namespace ft
