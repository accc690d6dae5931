#include "frobtau/virasoro.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ft {

namespace {

Scalar factorial(int n) {
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Scalar(mpq_class(r));
}

// (2k-1)!! with (-1)!! = 1
Scalar odd_factorial(int n) {
    mpz_class r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return Scalar(mpq_class(r));
}

Scalar pow2(int k) { return Scalar(mpq_class(mpz_class(1) << k)); }

TimePair ordered(TimeIndex x, TimeIndex y) { return x <= y ? TimePair{x, y} : TimePair{y, x}; }

void put(std::map<TimePair, Scalar>& m, const TimePair& k, const Scalar& s) {
    if (s.is_zero()) return;
    Scalar& slot = m[k];
    slot += s;
    if (slot.is_zero()) m.erase(k);
}

VirasoroOperator kdv_operator(int m, int L) {
    VirasoroOperator op;
    op.n = 1;
    op.index = m;
    op.max_level = L;
    if (m >= 0) {
        for (int k = 0; k <= m - 1; ++k) {
            int l = m - 1 - k;
            if (std::max(k, l) > L) continue;
            Scalar c = odd_factorial(2 * k + 1) * odd_factorial(2 * l + 1) * Scalar(1, 2) * pow2(m + 1).inverse();
            put(op.a, ordered({1, k}, {1, l}), c);
        }
        for (int k = 0; k + m <= L; ++k)
            put(op.b, {{1, k}, {1, k + m}},
                odd_factorial(2 * k + 2 * m + 1) * (pow2(m + 1) * odd_factorial(2 * k - 1)).inverse());
        if (m == 0) op.constant = Scalar(1, 16);
    } else if (m == -1) {
        for (int k = 1; k <= L; ++k) put(op.b, {{1, k}, {1, k - 1}}, Scalar(1));
        put(op.c, {{1, 0}, {1, 0}}, Scalar(1, 2));
    } else {
        int M = -m;
        for (int k = 0; k <= M - 1; ++k) {
            int l = M - 1 - k;
            if (std::max(k, l) > L) continue;
            put(op.c, ordered({1, k}, {1, l}),
                Scalar(1, 2) * pow2(M - 1) * (odd_factorial(2 * k - 1) * odd_factorial(2 * l - 1)).inverse());
        }
        for (int k = 0; k + M <= L; ++k)
            put(op.b, {{1, k + M}, {1, k}},
                pow2(M - 1) * odd_factorial(2 * k + 1) * odd_factorial(2 * M + 2 * k - 1).inverse());
    }
    return op;
}

Scalar cp1_alpha(int m, int k) {
    if (k == 0) return factorial(m);
    Scalar h;
    for (int j = k; j <= m + k; ++j) h += Scalar(1, j);
    return factorial(m + k) * factorial(k - 1).inverse() * h;
}

VirasoroOperator cp1_operator(int m, int L) {
    VirasoroOperator op;
    op.n = 2;
    op.index = m;
    op.max_level = L;
    if (m >= 0) {
        for (int k = 1; k <= m - 1; ++k) {
            int p = k - 1, q = m - k - 1;
            if (std::max(p, q) > L) continue;
            put(op.a, ordered({2, p}, {2, q}), factorial(k) * factorial(m - k));
        }
        for (int k = 1; k + m <= L; ++k) {
            Scalar c = factorial(m + k) * factorial(k - 1).inverse();
            put(op.b, {{1, k}, {1, m + k}}, c);
            put(op.b, {{2, k - 1}, {2, m + k - 1}}, c);
        }
        for (int k = m > 0 ? 0 : 1; m + k - 1 <= L; ++k) put(op.b, {{1, k}, {2, m + k - 1}}, cp1_alpha(m, k) * Scalar(2));
        if (m == 0) put(op.c, {{1, 0}, {1, 0}}, Scalar(1));
    } else if (m == -1) {
        for (int a = 1; a <= 2; ++a)
            for (int k = 1; k <= L; ++k) put(op.b, {{a, k}, {a, k - 1}}, Scalar(1));
        put(op.c, {{1, 0}, {2, 0}}, Scalar(1));
    } else {
        throw UnsupportedModel("CP1 operators are available for m >= -1");
    }
    return op;
}

std::string time_str(TimeIndex t) { return "t[" + std::to_string(t.first) + "," + std::to_string(t.second) + "]"; }

void require_time(const TauSeries& s, TimeIndex t) {
    if (t.second > s.bounds().levels) throw TruncationInsufficient("time " + time_str(t) + " beyond series levels");
}

TauSeries times_time(const TauSeries& s, TimeIndex t) {
    if (s.is_zero()) return TauSeries(s.bounds()).with_degree(s.bounds().degree + 1);
    require_time(s, t);
    return s.times_var(t.first, t.second);
}

// t - shift
TauSeries times_shifted(const TauSeries& s, TimeIndex t, const std::map<TimeIndex, Scalar>& shift) {
    auto it = shift.find(t);
    TauSeries out = t.second <= s.bounds().levels ? s.times_var(t.first, t.second) : TauSeries(s.bounds());
    if (it != shift.end()) out -= s * it->second;
    return out;
}

}  // namespace

std::string VirasoroOperator::str() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    for (const auto& [k, s] : a) {
        sep();
        os << "(" << s.str() << ")*eps^2*d" << time_str(k.first) << "*d" << time_str(k.second);
    }
    for (const auto& [k, s] : b) {
        sep();
        os << "(" << s.str() << ")*" << time_str(k.first) << "*d" << time_str(k.second);
    }
    for (const auto& [k, s] : c) {
        sep();
        os << "(" << s.str() << ")*eps^-2*" << time_str(k.first) << "*" << time_str(k.second);
    }
    if (!constant.is_zero()) {
        sep();
        os << constant.str();
    }
    if (first) os << "0";
    return os.str();
}

VirasoroOperator virasoro_operator(const FrobeniusModel& m, int index, int max_level) {
    if (max_level < 0) throw std::invalid_argument("max_level must be non-negative");
    switch (m.builtin) {
        case Builtin::KdV: return kdv_operator(index, max_level);
        case Builtin::CP1: return cp1_operator(index, max_level);
        default: throw UnsupportedModel("Virasoro operators are available for KdV and CP1 only");
    }
}

VirasoroOperator operator_sum(const VirasoroOperator& x, const VirasoroOperator& y) {
    if (x.n != y.n) throw std::invalid_argument("operators act on different time spaces");
    VirasoroOperator r = x;
    r.max_level = std::min(x.max_level, y.max_level);
    for (const auto& [k, s] : y.a) put(r.a, k, s);
    for (const auto& [k, s] : y.b) put(r.b, k, s);
    for (const auto& [k, s] : y.c) put(r.c, k, s);
    r.constant += y.constant;
    return r;
}

VirasoroOperator operator_scale(const VirasoroOperator& x, const Scalar& s) {
    VirasoroOperator r = x;
    for (auto* m : {&r.a, &r.b, &r.c}) {
        for (auto& [k, v] : *m) v *= s;
        std::erase_if(*m, [](const auto& kv) { return kv.second.is_zero(); });
    }
    r.constant *= s;
    return r;
}

TauSeries apply(const VirasoroOperator& L, const TauSeries& tau) {
    if (L.n != tau.bounds().n) throw std::invalid_argument("operator and series dimensions differ");
    TauSeries out = tau * L.constant;
    for (const auto& [k, s] : L.a) {
        TauSeries d = tau.d(k.first.first, k.first.second).d(k.second.first, k.second.second);
        out += d.times_eps(2) * s;
    }
    for (const auto& [k, s] : L.b) {
        TauSeries d = tau.d(k.second.first, k.second.second);
        if (d.is_zero()) continue;
        out += times_time(d, k.first) * s;
    }
    for (const auto& [k, s] : L.c) out += times_time(times_time(tau, k.first), k.second).times_eps(-2) * s;
    return out;
}

CommutatorReport commutator_check(const FrobeniusModel& m, int i, int j, int degree, int level) {
    int n = m.n;
    int levels = 16 / n - 1;
    if (level > levels) throw std::invalid_argument("monomial level exceeds series capacity");
    VirasoroOperator Li = virasoro_operator(m, i, levels), Lj = virasoro_operator(m, j, levels);
    // (i - j) L_{i+j} vanishes on the diagonal
    VirasoroOperator Lij = i == j ? operator_scale(Li, Scalar()) : virasoro_operator(m, i + j, levels);
    Scalar central = i + j == 0 ? Scalar(n) * Scalar(i * (i * i - 1), 12) : Scalar();
    SeriesBounds b{n, levels, 15, -8, 8};

    // enumerate exponent vectors over the variables (alpha, p <= level)
    std::vector<TimeIndex> vars;
    for (int p = 0; p <= level; ++p)
        for (int a = 1; a <= n; ++a) vars.push_back({a, p});
    CommutatorReport rep;
    std::vector<int> e(vars.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos == vars.size()) {
            TauSeries X(b);
            std::uint64_t key = 0;
            for (std::size_t q = 0; q < vars.size(); ++q)
                key |= std::uint64_t(e[q]) << (4 * X.var_id(vars[q].first, vars[q].second));
            X.add(TauSeries::Key{0, key}, Scalar(1));
            TauSeries r = apply(Li, apply(Lj, X)) - apply(Lj, apply(Li, X)) - apply(Lij, X) * Scalar(i - j) -
                          X * central;
            ++rep.monomials;
            if (!r.is_zero()) {
                ++rep.failures;
                if (rep.examples.size() < 5) rep.examples.push_back(X.key_str(TauSeries::Key{0, key}) + ": " + r.str());
            }
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[pos] = k;
            rec(pos + 1, left - k);
        }
        e[pos] = 0;
    };
    rec(0, degree);
    return rep;
}

bool ConstraintResidual::contaminated(const TauSeries::Key& k) const {
    for (int id : contaminating)
        if (TauSeries::power_of(k.exps, id) > 0) return true;
    return false;
}

std::vector<std::pair<int, TauSeries::Key>> ConstraintResidual::failures() const {
    std::vector<std::pair<int, TauSeries::Key>> out;
    for (std::size_t g = 0; g < by_genus.size(); ++g)
        for (const auto& [k, c] : by_genus[g].sorted())
            if (!contaminated(k)) out.push_back({static_cast<int>(g), k});
    return out;
}

ConstraintResidual constraint_residual(const FrobeniusModel& model, int index, const std::vector<TauSeries>& F,
                                       const std::map<TimeIndex, Scalar>& shift) {
    if (F.empty()) throw std::invalid_argument("no free energies given");
    const SeriesBounds& b0 = F[0].bounds();
    int levels = b0.levels;
    for (const auto& [t, s] : shift)
        if (t.second > levels) throw TruncationInsufficient("shifted time beyond series levels");
    VirasoroOperator L = virasoro_operator(model, index, levels + std::abs(index) + 1);

    ConstraintResidual res;
    res.m = index;
    for (const auto& [k, s] : L.a)
        if (k.first.second > levels || k.second.second > levels)
            throw TruncationInsufficient("quadratic part of the operator exceeds series levels");
    for (const auto& [k, s] : L.b)
        if (k.second.second > levels && k.first.second <= levels) {
            int id = k.first.second * b0.n + k.first.first - 1;
            if (std::find(res.contaminating.begin(), res.contaminating.end(), id) == res.contaminating.end())
                res.contaminating.push_back(id);
        }
    std::sort(res.contaminating.begin(), res.contaminating.end());

    int G = static_cast<int>(F.size());
    for (int g = 0; g < G; ++g) {
        TauSeries R(F[g].bounds());
        for (const auto& [k, s] : L.a) {
            auto [x, y] = k;
            if (g >= 1) R += F[g - 1].d(x.first, x.second).d(y.first, y.second) * s;
            for (int g1 = 0; g1 <= g; ++g1)
                R += F[g1].d(x.first, x.second) * F[g - g1].d(y.first, y.second) * s;
        }
        for (const auto& [k, s] : L.b) {
            auto [x, y] = k;
            if (y.second > levels) continue;
            if (x.second > levels && !shift.count(x)) continue;
            R += times_shifted(F[g].d(y.first, y.second), x, shift) * s;
        }
        if (g == 0)
            for (const auto& [k, s] : L.c) {
                TauSeries one(b0, Scalar(1));
                R += times_shifted(times_shifted(one, k.first, shift), k.second, shift) * s;
            }
        if (g == 1) R += TauSeries(F[1].bounds(), L.constant);
        res.by_genus.push_back(R);
    }
    return res;
}

}  // namespace ft
