#include "nullasd/expr.hpp"

#include <cctype>

namespace nullasd {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("empty expression", pos_);
        Expr e = sum();
        skip();
        if (pos_ != s_.size())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit()
    {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    Expr sum()
    {
        Expr acc = product();
        for (;;) {
            if (eat('+'))
                acc += product();
            else if (eat('-'))
                acc -= product();
            else
                return acc;
        }
    }

    Expr product()
    {
        Expr acc = unary();
        for (;;) {
            std::size_t at = pos_;
            if (eat('*')) {
                acc *= unary();
            } else if (eat('/')) {
                std::size_t den_at = pos_;
                Expr d = unary();
                if (d.is_zero()) {
                    bool literal = acc.is_constant() && d.is_constant();
                    throw ParseError(literal ? "malformed rational (zero denominator)"
                                             : "division by zero",
                                     literal ? den_at : at);
                }
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    Expr unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    long exponent()
    {
        skip();
        std::size_t at = pos_;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        if (!peek_digit())
            throw ParseError("exponent must be an integer literal", at);
        long v = integer_literal(at);
        if (eat('^')) {
            long rhs = exponent();
            if (rhs < 0)
                throw ParseError("negative exponent of an exponent", at);
            long r = 1;
            for (long i = 0; i < rhs; ++i) {
                r *= v;
                if (r > 100000 || r < -100000)
                    throw ParseError("exponent too large", at);
            }
            v = r;
        }
        return neg ? -v : v;
    }

    long integer_literal(std::size_t at)
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 9)
            throw ParseError("exponent too large", at);
        return std::stol(digits);
    }

    Expr power()
    {
        std::size_t at = pos_;
        Expr base = atom();
        if (eat('^')) {
            long n = exponent();
            if (base.is_zero() && n <= 0)
                throw ParseError("0 raised to a non-positive power", at);
            return pow(base, n);
        }
        return base;
    }

    Expr atom()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!eat(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.')
                throw ParseError("malformed rational (decimal point)", pos_);
            return Expr(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            skip();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                ++pos_;
                Expr arg = sum();
                if (!eat(')'))
                    throw ParseError("expected ')'", pos_);
                try {
                    if (name == "exp")
                        return exp(arg);
                    if (name == "log")
                        return log(arg);
                    if (name == "sin")
                        return sin(arg);
                    if (name == "cos")
                        return cos(arg);
                } catch (const EvalError& e) {
                    throw ParseError(e.what(), start);
                }
                throw ParseError("unknown function '" + name + "'", start);
            }
            return Expr::symbol(name);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
};

}  // namespace

Expr parse(std::string_view text)
{
    try {
        return Parser(text).run();
    } catch (const EvalError& e) {
        throw ParseError(e.what(), 0);
    }
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front())))
            x.erase(x.begin());
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back())))
            x.pop_back();
    };
    trim(s);
    if (s.empty())
        throw ParseError("empty number", 0);
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string body = s.substr(i);
    Rational r;
    auto all_digits = [](const std::string& x) {
        if (x.empty())
            return false;
        for (char ch : x)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                return false;
        return true;
    };
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw ParseError("malformed rational", i);
        mpz_class den(q);
        if (den == 0)
            throw ParseError("malformed rational (zero denominator)", i + slash + 1);
        r = Rational(mpz_class(p), den);
        r.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string a = body.substr(0, dot), b = body.substr(dot + 1);
        if ((!a.empty() && !all_digits(a)) || (!b.empty() && !all_digits(b)) || (a.empty() && b.empty()))
            throw ParseError("malformed decimal", i);
        mpz_class scale = 1;
        for (std::size_t k = 0; k < b.size(); ++k)
            scale *= 10;
        r = Rational(mpz_class((a.empty() ? "0" : a) + b), scale);
        r.canonicalize();
    } else {
        if (!all_digits(body))
            throw ParseError("malformed number", i);
        r = Rational(mpz_class(body));
    }
    return neg ? Rational(-r) : r;
}

}  // namespace nullasd
