#include "nullasd/expr.hpp"

#include "registry.hpp"

#include <cmath>
#include <sstream>

namespace nullasd {

using detail::GenId;
using detail::Poly;

double Number::to_double() const
{
    if (exact())
        return q().get_d();
    return std::get<double>(v);
}

std::string Number::str() const
{
    if (exact())
        return q().get_str();
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(v);
    return os.str();
}

Assignment::Assignment(std::initializer_list<std::pair<const std::string, Number>> il) : vals_(il) {}

const Number& Assignment::at(const std::string& name) const
{
    auto it = vals_.find(name);
    if (it == vals_.end())
        throw EvalError(EvalError::Kind::unassigned, "unassigned symbol '" + name + "'");
    return it->second;
}

bool Assignment::all_exact() const
{
    for (auto& [k, v] : vals_)
        if (!v.exact())
            return false;
    return true;
}

std::string Assignment::str() const
{
    std::string s;
    for (auto& [k, v] : vals_) {
        if (!s.empty())
            s += ",";
        s += k + "=" + v.str();
    }
    return s;
}

PointEvaluator::PointEvaluator(const Assignment& a) : a_(a), exact_(a.all_exact()) {}

namespace {

double checked(double v)
{
    if (!std::isfinite(v))
        throw EvalError(EvalError::Kind::non_finite, "non-finite value");
    return v;
}

}  // namespace

Number PointEvaluator::gen_value(GenId g)
{
    auto it = cache_.find(g);
    if (it != cache_.end())
        return it->second;
    const auto& gi = detail::registry().info(g);
    Number v;
    if (gi.is_symbol) {
        v = a_.at(gi.name);
    } else {
        double u = eval(gi.arg).to_double();
        switch (gi.fn) {
        case Kernel::exp: v = checked(std::exp(u)); break;
        case Kernel::log:
            if (u <= 0)
                throw EvalError(EvalError::Kind::log_domain, "log of a non-positive value");
            v = checked(std::log(u));
            break;
        case Kernel::sin: v = checked(std::sin(u)); break;
        case Kernel::cos: v = checked(std::cos(u)); break;
        }
    }
    cache_.emplace(g, v);
    return v;
}

double PointEvaluator::gen_double(GenId g)
{
    auto it = dcache_.find(g);
    if (it != dcache_.end())
        return it->second;
    double d = gen_value(g).to_double();
    dcache_.emplace(g, d);
    return d;
}

Number PointEvaluator::poly_value(const Poly& p)
{
    bool exact = true;
    for (GenId g : p.generators())
        if (!gen_value(g).exact()) {
            exact = false;
            break;
        }
    if (exact) {
        Rational acc = 0;
        for (const auto& t : p.terms()) {
            Rational term = t.c;
            for (auto& [g, e] : t.m) {
                Number bv = gen_value(g);
                const Rational& base = bv.q();
                if (base == 0 && e < 0)
                    throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
                Rational pw = 1;
                mpz_class n, d;
                mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e)));
                mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e)));
                pw = e > 0 ? Rational(n, d) : Rational(d, n);
                pw.canonicalize();
                term *= pw;
            }
            acc += term;
        }
        return acc;
    }
    double acc = 0;
    for (const auto& t : p.terms()) {
        double term = t.c.get_d();
        for (auto& [g, e] : t.m) {
            double b = gen_double(g);
            if (b == 0 && e < 0)
                throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
            term *= std::pow(b, e);
        }
        acc += term;
    }
    return checked(acc);
}

Number PointEvaluator::eval(const Expr& e)
{
    const auto& r = e.rf();
    Number n = poly_value(r.num);
    if (r.den.empty())
        return n;
    bool exact = n.exact();
    Rational dq = 1;
    double dd = 1;
    for (auto& f : r.den) {
        Number v = poly_value(f.p);
        if (v.exact() && v.q() == 0)
            throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
        if (!v.exact() && v.to_double() == 0)
            throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
        if (v.exact() && exact) {
            Rational p = 1;
            for (int i = 0; i < f.e; ++i)
                p *= v.q();
            dq *= p;
        } else {
            exact = false;
        }
        dd *= std::pow(v.to_double(), f.e);
    }
    if (exact)
        return Rational(n.q() / dq);
    if (dd == 0)
        throw EvalError(EvalError::Kind::division_by_zero, "division by zero");
    return checked(n.to_double() / dd);
}

double PointEvaluator::eval_double(const Expr& e) { return eval(e).to_double(); }

std::pair<double, double> PointEvaluator::numerator_with_scale(const Expr& e)
{
    double sum = 0, scale = 0;
    for (const auto& t : e.rf().num.terms()) {
        double term = t.c.get_d();
        for (auto& [g, k] : t.m)
            term *= std::pow(gen_double(g), k);
        sum += term;
        scale += std::fabs(term);
    }
    return {checked(sum), checked(scale)};
}

double PointEvaluator::min_denominator_magnitude(const Expr& e)
{
    double m = INFINITY;
    const auto& r = e.rf();
    auto& reg = detail::registry();
    auto visit_gens = [&](const Poly& p) {
        for (GenId g : p.generators()) {
            const auto& gi = reg.info(g);
            if (!gi.is_symbol)
                m = std::min(m, min_denominator_magnitude(gi.arg));
            if (p.low_degree_in(g) < 0)
                m = std::min(m, std::fabs(gen_double(g)));
        }
    };
    visit_gens(r.num);
    for (auto& f : r.den) {
        visit_gens(f.p);
        m = std::min(m, std::fabs(poly_value(f.p).to_double()));
    }
    return m;
}

Number evaluate(const Expr& e, const Assignment& a)
{
    for (const auto& s : e.free_symbols())
        a.at(s);
    PointEvaluator pe(a);
    return pe.eval(e);
}

}  // namespace nullasd
