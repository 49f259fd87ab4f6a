#include "mres/polyring.hpp"

#include <cctype>

namespace mres {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[i_]) + "'", i_);
        return p;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (peek('+')) {
                ++i_;
                acc = acc + term();
            } else if (peek('-')) {
                ++i_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (peek('*')) {
            ++i_;
            acc = acc * unary();
        }
        return acc;
    }

    Polynomial unary() {
        if (peek('-')) {
            ++i_;
            return -unary();
        }
        if (peek('+')) {
            ++i_;
            return unary();
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (peek('^')) {
            ++i_;
            skip();
            std::size_t start = i_;
            if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
                throw ParseError("exponent must be a non-negative integer", i_);
            std::string digits = integer();
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    std::string integer() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        return s_.substr(start, i_ - start);
    }

    Polynomial atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Polynomial p = expr();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q(integer());
            if (peek('/')) {
                ++i_;
                skip();
                std::size_t at = i_;
                if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
                    throw ParseError("expected denominator", i_);
                mpz_class den(integer());
                if (den == 0) throw ParseError("zero denominator", at);
                q /= den;
            }
            q.canonicalize();
            return Polynomial::constant(vars_.size(), q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name = s_.substr(start, i_ - start);
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k] == name) return Polynomial::variable(vars_.size(), k);
            throw ParseError("unknown variable '" + name + "'", start);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i_);
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t i_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

std::string to_string(const Polynomial& f, const std::vector<std::string>& vars) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coef;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            int e = t.mono[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += rational_to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += rational_to_string(c) + "*" + mono;
        }
    }
    return out;
}

}  // namespace mres
