#include "frobtau/expr.hpp"

#include <cctype>
#include <vector>

namespace ft {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    JetPoly parse() {
        JetPoly r = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, ParseError::Kind k = ParseError::Kind::Syntax, std::size_t at = std::string::npos) {
        if (at == std::string::npos) at = pos_;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(k, line, col, msg + " at line " + std::to_string(line) + ", column " + std::to_string(col));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    long integer() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || (pos_ == start + 1 && s_[start] == '-')) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    std::vector<long> index_list() {
        expect('[');
        std::vector<long> r{integer()};
        while (accept(',')) r.push_back(integer());
        expect(']');
        return r;
    }

    JetPoly expr() {
        JetPoly r = term();
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    JetPoly term() {
        JetPoly r = unary();
        for (;;) {
            if (accept('*')) {
                r = r * unary();
            } else if (peek('/')) {
                std::size_t at = pos_;
                ++pos_;
                JetPoly d = unary();
                if (!d.is_monomial()) fail("division by a non-monomial", ParseError::Kind::Syntax, at);
                r = r * d.pow(Frac(-1));
            } else {
                return r;
            }
        }
    }

    JetPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Frac exponent() {
        if (accept('(')) {
            bool neg = accept('-');
            long n = integer();
            long d = 1;
            if (accept('/')) d = integer();
            expect(')');
            return Frac(neg ? -n : n, d);
        }
        bool neg = accept('-');
        long n = integer();
        return Frac(neg ? -n : n);
    }

    JetPoly power() {
        std::size_t at = (skip(), pos_);
        JetPoly b = primary();
        if (accept('^')) {
            Frac k = exponent();
            if (!(k.is_integer() && k.num >= 0) && !b.is_monomial())
                fail("negative or fractional power of a sum", ParseError::Kind::Syntax, at);
            return b.pow(k);
        }
        return b;
    }

    JetPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            JetPoly r = expr();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return JetPoly(Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            return identifier(id, start);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    JetPoly identifier(const std::string& id, std::size_t at) {
        if (id == "v" || id == "u") {
            auto idx = index_list();
            if (idx.size() > 2 || idx[0] < 1 || (idx.size() == 2 && idx[1] < 0)) fail("bad index", ParseError::Kind::Syntax, at);
            int s = idx.size() == 2 ? static_cast<int>(idx[1]) : 0;
            return id == "v" ? JetPoly::v(static_cast<int>(idx[0]), s)
                             : JetPoly::atom(Atom::canon(static_cast<int>(idx[0]), s));
        }
        if (id == "U") {
            auto idx = index_list();
            if (idx.size() != 2 || idx[0] == idx[1] || idx[0] < 1 || idx[1] < 1) fail("bad index", ParseError::Kind::Syntax, at);
            if (idx[0] < idx[1]) return JetPoly::atom(Atom::diff(static_cast<int>(idx[0]), static_cast<int>(idx[1])));
            return -JetPoly::atom(Atom::diff(static_cast<int>(idx[1]), static_cast<int>(idx[0])));
        }
        if (id == "sigma") {
            auto idx = index_list();
            if (idx.size() != 1) fail("bad index", ParseError::Kind::Syntax, at);
            return JetPoly::atom(Atom::sigma(static_cast<int>(idx[0])));
        }
        if (id == "phi" || id == "psi" || id == "chi") {
            auto idx = index_list();
            if (idx.size() != 2) fail("bad index", ParseError::Kind::Syntax, at);
            int w = id == "phi" ? 0 : id == "psi" ? 1 : 2;
            return JetPoly::atom(Atom::test(w, static_cast<int>(idx[0]), static_cast<int>(idx[1])));
        }
        if (id == "eps") return JetPoly::eps(1);
        if (id == "exp") {
            expect('(');
            std::size_t argAt = (skip(), pos_);
            JetPoly arg = expr();
            expect(')');
            if (arg.is_zero()) return JetPoly(1);
            if (!arg.is_monomial()) fail("exp argument must be k*v[a]", ParseError::Kind::Syntax, argAt);
            const auto& [m, k] = *arg.terms().begin();
            if (m.factors().size() != 1 || m.factors()[0].first.kind != AtomKind::Jet || m.factors()[0].first.b != 0 ||
                !(m.factors()[0].second == Frac(1)) || !k.is_rational())
                fail("exp argument must be k*v[a]", ParseError::Kind::Syntax, argAt);
            mpq_class q = k.rational_value();
            if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) fail("exp multiplier too large", ParseError::Kind::Syntax, argAt);
            return JetPoly::expv(m.factors()[0].first.a, Frac(q.get_num().get_si(), q.get_den().get_si()));
        }
        int g = generator_index(id);
        if (g < 0) fail("unknown generator '" + id + "'", ParseError::Kind::UnknownGenerator, at);
        return JetPoly(Scalar::generator(g));
    }
};

}  // namespace

JetPoly parse_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace ft
