// Exact symbolic expressions: rational functions over Q in coordinate symbols
// and opaque kernel subterms exp(u), log(u), sin(u), cos(u).
#pragma once

#include "nullasd/detail/poly.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nullasd {

using Rational = mpq_class;

enum class Kernel { exp, log, sin, cos };

namespace detail {

struct Factor {
    Poly p;  // primitive, integer coefficients, positive leading term, >= 2 terms
    int e;   // positive
};

// num / prod(den[i].p ^ den[i].e); num is a Laurent polynomial not divisible
// by any den factor.
struct RatFun {
    Poly num;
    std::vector<Factor> den;
};

}  // namespace detail

class Expr {
public:
    Expr();  // zero
    Expr(long v);
    Expr(int v) : Expr(static_cast<long>(v)) {}
    Expr(const Rational& q);

    static Expr symbol(std::string_view name);
    static Expr apply(Kernel k, const Expr& arg);

    bool is_zero() const;  // structural: normal form is 0
    bool is_constant() const;
    std::optional<Rational> constant_value() const;
    bool has_kernels() const;
    bool identical(const Expr& o) const;
    std::set<std::string> free_symbols() const;
    std::size_t term_count() const;

    std::string str() const;

    Expr operator-() const;
    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o);
    Expr& operator/=(const Expr& o);

    const detail::RatFun& rf() const { return *rf_; }
    static Expr from_rf(detail::RatFun r);

private:
    std::shared_ptr<const detail::RatFun> rf_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, long n);
Expr exp(const Expr& u);
Expr log(const Expr& u);
Expr sin(const Expr& u);
Expr cos(const Expr& u);

inline Expr sym(std::string_view name) { return Expr::symbol(name); }

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
    std::size_t offset;
};

Expr parse(std::string_view text);
Rational parse_rational(std::string_view text);  // integers, p/q, decimals

Expr differentiate(const Expr& e, std::string_view var);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);

// Evaluation ---------------------------------------------------------------

struct Number {
    std::variant<Rational, double> v;
    Number() : v(Rational(0)) {}
    Number(const Rational& q) : v(q) {}
    Number(double d) : v(d) {}
    Number(long i) : v(Rational(i)) {}
    Number(int i) : v(Rational(i)) {}
    bool exact() const { return std::holds_alternative<Rational>(v); }
    const Rational& q() const { return std::get<Rational>(v); }
    double to_double() const;
    std::string str() const;
};

class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<const std::string, Number>> il);
    void set(const std::string& name, const Number& v) { vals_[name] = v; }
    bool has(const std::string& name) const { return vals_.count(name) != 0; }
    const Number& at(const std::string& name) const;
    const std::map<std::string, Number>& values() const { return vals_; }
    bool all_exact() const;
    std::string str() const;

private:
    std::map<std::string, Number> vals_;
};

struct EvalError : std::runtime_error {
    enum class Kind { unassigned, division_by_zero, log_domain, non_finite };
    EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

Number evaluate(const Expr& e, const Assignment& a);

// Caches generator values for repeated evaluation at one point.
class PointEvaluator {
public:
    explicit PointEvaluator(const Assignment& a);
    Number eval(const Expr& e);
    double eval_double(const Expr& e);
    // Numerator terms evaluated in floating point: (sum, sum of |terms|).
    std::pair<double, double> numerator_with_scale(const Expr& e);
    // Smallest |value| over denominator factors and negative-power generators.
    double min_denominator_magnitude(const Expr& e);
    const Assignment& assignment() const { return a_; }
    bool exact() const { return exact_; }

private:
    Number gen_value(detail::GenId g);
    double gen_double(detail::GenId g);
    Number poly_value(const detail::Poly& p);
    Assignment a_;
    bool exact_;
    std::map<detail::GenId, Number> cache_;
    std::map<detail::GenId, double> dcache_;
};

// Zero testing -------------------------------------------------------------

struct SamplingConfig {
    int count = 50;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
};

enum class Verdict { proven_zero, sampled_zero, nonzero };

struct ZeroResult {
    Verdict verdict = Verdict::proven_zero;
    Assignment witness;  // set for nonzero
    Number value;        // value at the witness
    bool is_zero() const { return verdict != Verdict::nonzero; }
};

const char* verdict_name(Verdict v);

// Deterministic sample points: rationals p/q with p, q in [1, 97], random sign.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed);
    Rational next_rational();
    Assignment point(const std::set<std::string>& names);

private:
    std::uint64_t state_;
    std::uint64_t next();
};

ZeroResult is_zero(const Expr& e, const SamplingConfig& cfg = {});
// Joint test: all expressions must vanish; points shared across components.
ZeroResult all_zero(const std::vector<Expr>& es, const SamplingConfig& cfg = {},
                    std::string* failing_label = nullptr,
                    const std::vector<std::string>* labels = nullptr);

// True when a point keeps every denominator of every expression at least
// `margin` away from zero and all values evaluate.
bool point_is_regular(const std::vector<Expr>& es, const Assignment& a, double margin = 1e-3);

}  // namespace nullasd
