#pragma once

#include "frobtau/jet.hpp"

#include <stdexcept>
#include <string>

namespace ft {

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, UnknownGenerator };
    Kind kind;
    int line;
    int column;
    ParseError(Kind k, int l, int c, const std::string& msg)
        : std::runtime_error(msg), kind(k), line(l), column(c) {}
};

// Grammar: rationals, named generators (i, sqrt2, ...), v[a], v[a,s], u[i], u[i,s],
// U[i,j], eps, sigma[a], exp(k*v[a]), + - * / ^ and parentheses.
JetPoly parse_expression(const std::string& text);

}  // namespace ft
