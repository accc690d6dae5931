#include "frobtau/polytropic.hpp"

#include "frobtau/frobenius.hpp"

namespace ft {

Scalar KappaRational::at(const Scalar& kappa) const {
    if (kappa.is_zero()) throw std::domain_error("kappa = 0");
    Scalar s, pw(1);
    for (long c : num) {
        s += pw * Scalar(c);
        pw = pw * kappa;
    }
    Scalar d(den);
    for (int i = 0; i < den_pow; ++i) d = d * kappa;
    return s * d.inverse();
}

std::string KappaRational::str() const {
    std::string out;
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i] == 0) continue;
        if (!out.empty()) out += num[i] < 0 ? " - " : " + ";
        else if (num[i] < 0) out += "-";
        std::string mag = std::to_string(num[i] < 0 ? -num[i] : num[i]);
        if (i == 0) out += mag;
        else out += (mag == "1" ? "" : mag + "*") + "k" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    std::string d = std::to_string(den);
    if (den_pow == 1) d += "*k";
    if (den_pow > 1) d += "*k^" + std::to_string(den_pow);
    return "(" + out + ")/(" + d + ")";
}

const std::vector<KappaRational>& polytropic_a() {
    static const std::vector<KappaRational> t = {
        {"a1", {36, 144, -59, 19}, 5760, 3},
        {"a2", {60, 176, 433, -182, 17}, 5760, 3},
        {"a3", {6, -19, -11, -4}, 1440, 3},
        {"a4", {-6, -5, 13}, 1440, 3},
        {"a5", {-42, 13, -7}, 2880, 2},
        {"a6", {-36, -72, -245, -61, 30}, 2880, 2},
        {"a7", {6, 5, 15, 5, 5}, 1440, 2},
        {"a8", {1}, 120, 1},
        {"a9", {2, 5}, 240, 0},
    };
    return t;
}

const std::vector<KappaRational>& polytropic_b() {
    static const std::vector<KappaRational> t = {
        {"b1", {108, 192, -97, 17}, 2880, 3},
        {"b2", {-18, -75, 47, -10}, 1440, 3},
        {"b3", {-6, -17, 5, -2}, 288, 3},
        {"b4", {6, -4, 1}, 180, 2},
        {"b5", {6, 1, 1}, 720, 2},
        {"b6", {6, 1, 1}, 720, 2},
        {"b7", {-1}, 360, 1},
    };
    return t;
}

PolytropicSystem polytropic_deformation(const Scalar& kappa) {
    if (!kappa.is_rational() || kappa.is_zero()) throw InvalidModel("kappa must be a nonzero rational");
    PolytropicSystem s;
    s.kappa = kappa;
    for (const auto& r : polytropic_a()) s.a.push_back(r.at(kappa));
    for (const auto& r : polytropic_b()) s.b.push_back(r.at(kappa));
    Frac k = Frac(kappa.rational_value().get_num().get_si(), kappa.rational_value().get_den().get_si());
    auto u = [](int s) { return JetPoly::v(1, s); };
    auto r = [](int s) { return JetPoly::v(2, s); };
    auto rho = [&](Frac e) { return JetPoly::v(2).pow(e); };
    Scalar K = kappa;
    Scalar pre = (K - Scalar(2)) * (K - Scalar(3));
    const auto& a = s.a;
    const auto& b = s.b;

    JetPoly fu = u(0) * u(0) * Scalar(1, 2) + rho(k);
    JetPoly e2u = rho(k - Frac(3)) * r(1) * r(1) * ((K - Scalar(2)) * Scalar(1, 8)) + rho(k - Frac(2)) * r(2) * (K * Scalar(1, 12));
    JetPoly e4u = rho(Frac(-4)) * u(1) * u(1) * r(1) * r(1) * a[0] + rho(k - Frac(6)) * r(1).pow(Frac(4)) * a[1] +
                  rho(Frac(-3)) * u(2) * u(1) * r(1) * a[2] + rho(Frac(-2)) * u(2) * u(2) * a[3] +
                  rho(Frac(-3)) * u(1) * u(1) * r(2) * a[4] + rho(k - Frac(5)) * r(1) * r(1) * r(2) * a[5] +
                  rho(k - Frac(4)) * r(2) * r(2) * a[6] + rho(Frac(-2)) * u(1) * u(3) * a[7] +
                  rho(k - Frac(4)) * r(1) * r(3) * a[8];
    e4u = e4u * pre + rho(k - Frac(3)) * r(4) * (K * (K * K - Scalar(1)) * (K * K - Scalar(4)) * Scalar(1, 360));
    fu += JetPoly::eps(2) * e2u + JetPoly::eps(4) * e4u;

    JetPoly fr = r(0) * u(0);
    JetPoly e2r = rho(Frac(-1)) * u(1) * r(1) * ((Scalar(2) - K) * (K - Scalar(3)) * (Scalar(12) * K).inverse()) +
                  u(2) * Scalar(1, 6);
    JetPoly e4r = rho(Frac(-4)) * u(1) * r(1).pow(Frac(3)) * b[0] + rho(Frac(-3)) * r(1) * r(1) * u(2) * b[1] +
                  rho(Frac(-3)) * u(1) * r(1) * r(2) * b[2] + rho(Frac(-2)) * u(2) * r(2) * b[3] +
                  rho(Frac(-2)) * u(3) * r(1) * b[4] + rho(Frac(-2)) * u(1) * r(3) * b[5] + rho(Frac(-1)) * u(4) * b[6];
    fr += JetPoly::eps(2) * e2r + JetPoly::eps(4) * (e4r * pre);
    s.flux = {fu, fr};
    return s;
}

std::vector<JetPoly> polytropic_coupling(const PolytropicSystem& s, int max_eps) {
    if (s.kappa != Scalar(2)) throw UnsupportedModel("decoupling check implemented for kappa = 2");
    Scalar r2 = Scalar::generator(generator_index("sqrt2"));
    // u = (w+ + w-)/2, rho = (w+ - w-)/(2 sqrt2), with w+ = v[1], w- = v[2]
    std::vector<JetPoly> images{(JetPoly::v(1) + JetPoly::v(2)) * Scalar(1, 2),
                                (JetPoly::v(1) - JetPoly::v(2)) * (Scalar(2) * r2).inverse()};
    std::vector<JetPoly> flux;
    for (const auto& f : s.flux) {
        if (!f.is_polynomial()) throw std::domain_error("flux is not polynomial");
        flux.push_back(substitute_jets(eps_truncate(f, max_eps), images, max_eps));
    }
    std::vector<JetPoly> out;
    for (int sign : {1, -1}) {
        JetPoly rhs = -dx(flux[0] + flux[1] * (r2 * Scalar(sign)));
        int other = sign == 1 ? 2 : 1;
        JetPoly coupled;
        for (const auto& [m, c] : rhs.terms())
            for (const auto& [a, k] : m.factors())
                if (a.kind == AtomKind::Jet && a.a == other) {
                    coupled.add(m, c);
                    break;
                }
        out.push_back(coupled);
    }
    return out;
}

}  // namespace ft
