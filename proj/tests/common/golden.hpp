#pragma once

#include <array>
#include <string>
#include <vector>

namespace golden {

// monomial as (alpha, p, power) triples
using Mono = std::vector<std::array<int, 3>>;

struct Coeff {
    const char* value;
    Mono mono;
};

// Witten-Kontsevich log tau, t_p = t^{1,p}
inline const std::vector<Coeff>& wk_genus0() {
    static const std::vector<Coeff> t = {
        {"1/6", {{1, 0, 3}}},
        {"1/6", {{1, 0, 3}, {1, 1, 1}}},
        {"1/6", {{1, 0, 3}, {1, 1, 2}}},
        {"1/6", {{1, 0, 3}, {1, 1, 3}}},
        {"1/6", {{1, 0, 3}, {1, 1, 4}}},
        {"1/24", {{1, 0, 4}, {1, 2, 1}}},
        {"1/8", {{1, 0, 4}, {1, 1, 1}, {1, 2, 1}}},
        {"1/4", {{1, 0, 4}, {1, 1, 2}, {1, 2, 1}}},
        {"1/40", {{1, 0, 5}, {1, 2, 2}}},
        {"1/120", {{1, 0, 5}, {1, 3, 1}}},
        {"1/30", {{1, 0, 5}, {1, 1, 1}, {1, 3, 1}}},
        {"1/720", {{1, 0, 6}, {1, 4, 1}}},
    };
    return t;
}

inline const std::vector<Coeff>& wk_genus1() {
    static const std::vector<Coeff> t = {
        {"1/24", {{1, 1, 1}}},
        {"1/48", {{1, 1, 2}}},
        {"1/72", {{1, 1, 3}}},
        {"1/96", {{1, 1, 4}}},
        {"1/24", {{1, 0, 1}, {1, 2, 1}}},
        {"1/12", {{1, 0, 1}, {1, 1, 1}, {1, 2, 1}}},
        {"1/8", {{1, 0, 1}, {1, 1, 2}, {1, 2, 1}}},
        {"1/24", {{1, 0, 2}, {1, 2, 2}}},
        {"1/48", {{1, 0, 2}, {1, 3, 1}}},
        {"1/16", {{1, 0, 2}, {1, 1, 1}, {1, 3, 1}}},
        {"1/144", {{1, 0, 3}, {1, 4, 1}}},
    };
    return t;
}

inline const std::vector<Coeff>& wk_genus2() {
    static const std::vector<Coeff> t = {
        {"7/1440", {{1, 2, 3}}},
        {"7/288", {{1, 1, 1}, {1, 2, 3}}},
        {"29/5760", {{1, 2, 1}, {1, 3, 1}}},
        {"29/1440", {{1, 1, 1}, {1, 2, 1}, {1, 3, 1}}},
        {"29/576", {{1, 1, 2}, {1, 2, 1}, {1, 3, 1}}},
        {"5/144", {{1, 0, 1}, {1, 2, 2}, {1, 3, 1}}},
        {"29/5760", {{1, 0, 1}, {1, 3, 2}}},
        {"29/1152", {{1, 0, 1}, {1, 1, 1}, {1, 3, 2}}},
        {"1/1152", {{1, 4, 1}}},
        {"1/384", {{1, 1, 1}, {1, 4, 1}}},
        {"1/192", {{1, 1, 2}, {1, 4, 1}}},
        {"1/96", {{1, 1, 3}, {1, 4, 1}}},
        {"11/1440", {{1, 0, 1}, {1, 2, 1}, {1, 4, 1}}},
        {"11/288", {{1, 0, 1}, {1, 1, 1}, {1, 2, 1}, {1, 4, 1}}},
        {"17/1920", {{1, 0, 2}, {1, 3, 1}, {1, 4, 1}}},
    };
    return t;
}

// CP1 genus-two free energy on the topological solution, quadratic window p <= 3
inline const std::vector<Coeff>& cp1_genus2() {
    static const std::vector<Coeff> t = {
        {"-1/240", {{1, 3, 1}}},
        {"7/5760", {{2, 2, 1}}},
        {"-5/576", {{1, 2, 2}}},
        {"-1/80", {{1, 1, 1}, {1, 3, 1}}},
        {"29/2880", {{1, 3, 2}}},
        {"7/5760", {{1, 3, 1}, {2, 0, 1}}},
        {"7/1920", {{1, 2, 1}, {2, 1, 1}}},
        {"7/1920", {{1, 1, 1}, {2, 2, 1}}},
        {"1/192", {{1, 3, 1}, {2, 2, 1}}},
        {"1/1152", {{2, 2, 2}}},
        {"7/5760", {{1, 0, 1}, {2, 3, 1}}},
        {"1/192", {{1, 2, 1}, {2, 3, 1}}},
        {"25/2304", {{2, 3, 2}}},
    };
    return t;
}

struct Invariant {
    const char* value;
    std::vector<std::array<int, 2>> insertions;  // (p, alpha) as in tau_p(phi_alpha)
};

inline const std::vector<Invariant>& cp1_gw_genus2() {
    static const std::vector<Invariant> t = {
        {"-1/240", {{3, 1}}},
        {"7/5760", {{2, 2}}},
        {"-5/288", {{2, 1}, {2, 1}}},
        {"29/1440", {{3, 1}, {3, 1}}},
        {"7/1920", {{2, 1}, {1, 2}}},
        {"1/192", {{3, 1}, {2, 2}}},
        {"1/192", {{2, 1}, {3, 2}}},
        {"1/576", {{2, 2}, {2, 2}}},
        {"25/1152", {{3, 2}, {3, 2}}},
    };
    return t;
}

}  // namespace golden
