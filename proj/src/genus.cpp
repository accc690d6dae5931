#include "frobtau/genus.hpp"
#include "frobtau/expr.hpp"

#include <regex>
#include <set>
#include <sstream>

namespace ft {

int GenusJetFunction::max_jet_order() const {
    int top = 0;
    auto scan = [&](const Atom& a) {
        if (a.kind == AtomKind::Canon) top = std::max<int>(top, a.b);
    };
    for (const auto& [a, c] : logs) scan(a);
    for (const auto& [m, c] : expr.terms())
        for (const auto& [a, k] : m.factors()) scan(a);
    return top;
}

std::string GenusJetFunction::str() const {
    if (genus != 1) return expr.str();
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : logs) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*log(" << atom_str(a) << ")";
    }
    return first ? "0" : os.str();
}

namespace {

std::string bracket_letters_to_digits(const std::string& t, const std::map<char, int>& val) {
    std::string out;
    bool inside = false;
    for (char c : t) {
        if (c == '[') inside = true;
        if (c == ']') inside = false;
        if (inside && val.count(c)) {
            out += std::to_string(val.at(c));
        } else {
            out += c;
        }
    }
    return out;
}

}  // namespace

JetPoly expand_genus2_term(const std::string& term, const Genus2Frame& frame) {
    std::vector<char> letters;
    for (std::size_t p = 1; p < term.size(); ++p) {
        char c = term[p];
        if ((term[p - 1] == '[' || term[p - 1] == ',') && (c == 'i' || c == 'j' || c == 'k' || c == 'l') &&
            std::find(letters.begin(), letters.end(), c) == letters.end())
            letters.push_back(c);
    }
    static const std::regex pair_re(R"(([VU])\[(\d+),(\d+)\])");
    static const std::regex v_re(R"(V\[(\d+),(\d+)\])");
    static const std::regex h_re(R"(h\[(\d+)\])");
    JetPoly total;
    std::vector<int> idx(letters.size(), 1);
    while (true) {
        std::map<char, int> val;
        for (std::size_t q = 0; q < letters.size(); ++q) val[letters[q]] = idx[q];
        std::string s = bracket_letters_to_digits(term, val);
        bool skip = false;
        for (auto it = std::sregex_iterator(s.begin(), s.end(), pair_re); it != std::sregex_iterator(); ++it)
            if ((*it)[2] == (*it)[3]) skip = true;
        if (!skip) {
            std::string r;
            std::size_t last = 0;
            for (auto it = std::sregex_iterator(s.begin(), s.end(), v_re); it != std::sregex_iterator(); ++it) {
                r += s.substr(last, it->position() - last);
                r += "(" + frame.V(std::stoi((*it)[1]), std::stoi((*it)[2])) + ")";
                last = it->position() + it->length();
            }
            r += s.substr(last);
            std::string r2;
            last = 0;
            for (auto it = std::sregex_iterator(r.begin(), r.end(), h_re); it != std::sregex_iterator(); ++it) {
                r2 += r.substr(last, it->position() - last);
                r2 += "(" + frame.h(std::stoi((*it)[1])) + ")";
                last = it->position() + it->length();
            }
            r2 += r.substr(last);
            total += parse_expression(r2);
        }
        std::size_t q = 0;
        while (q < idx.size() && idx[q] == frame.n) idx[q++] = 1;
        if (q == idx.size()) break;
        ++idx[q];
    }
    return total;
}

Genus2Frame model_frame(const FrobeniusModel& m) {
    Genus2Frame f;
    f.n = m.n;
    if (m.builtin == Builtin::KdV) {
        f.V = [](int, int) { return std::string("0"); };
        f.h = [](int) { return std::string("1"); };
        return f;
    }
    CanonicalData d = canonical_coordinates(m);
    if (d.h_coeff.empty()) throw UnsupportedModel("genus two needs closed-form h_i for " + m.name);
    f.V = [d](int i, int j) { return d.V[i - 1][j - 1].str(); };
    f.h = [d](int i) { return d.h_coeff[i - 1].str() + "*U[1,2]^(" + d.h_exponent.str() + ")"; };
    return f;
}

GenusJetFunction genus1(const FrobeniusModel& m) {
    GenusJetFunction g;
    g.genus = 1;
    g.n = m.n;
    if (m.builtin == Builtin::None) throw UnsupportedModel("genus one needs a builtin model");
    for (int i = 1; i <= m.n; ++i) g.logs.push_back({Atom::canon(i, 1), Scalar(1, 24)});
    if (m.n == 2) {
        // log(tau_I / J^{1/24}) with tau_I = u12^e and J = h1 h2 ~ u12^{2 h_exponent}
        TauIData t = isomonodromic_tau_exponents(m);
        CanonicalData d = canonical_coordinates(m);
        Scalar c = t.exponent - Scalar(d.h_exponent) * Scalar(1, 12);
        if (!c.is_zero()) g.logs.push_back({Atom::diff(1, 2), c});
    } else if (m.n != 1) {
        throw UnsupportedModel("genus one implemented for one- and two-component models");
    }
    return g;
}

GenusJetFunction genus2(const FrobeniusModel& m) {
    if (m.builtin != Builtin::KdV && m.builtin != Builtin::CP1)
        throw UnsupportedModel("genus two implemented for kdv and cp1");
    GenusJetFunction g;
    g.genus = 2;
    g.n = m.n;
    Genus2Frame f = model_frame(m);
    for (const auto& t : genus2_terms()) g.expr += expand_genus2_term(t, f);
    return g;
}

JetPoly to_flat_jets(const JetPoly& canonical) {
    return substitute_atoms(canonical, [](const Atom& a) -> std::optional<JetPoly> {
        if (a.kind == AtomKind::Canon) {
            if (a.a != 1) throw UnsupportedModel("flat jets only for one component");
            return JetPoly::v(1, a.b);
        }
        if (a.kind == AtomKind::Diff) throw UnsupportedModel("flat jets only for one component");
        return std::nullopt;
    });
}

}  // namespace ft
