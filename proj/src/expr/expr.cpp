#include "nullasd/expr.hpp"

#include "registry.hpp"

#include <algorithm>
#include <sstream>

namespace nullasd {

using detail::Factor;
using detail::GenId;
using detail::Mono;
using detail::Poly;
using detail::RatFun;
using detail::Term;

namespace detail {

const char* kernel_name(Kernel k)
{
    switch (k) {
    case Kernel::exp: return "exp";
    case Kernel::log: return "log";
    case Kernel::sin: return "sin";
    case Kernel::cos: return "cos";
    }
    return "?";
}

Registry& registry()
{
    static Registry r;
    return r;
}

GenId Registry::intern_symbol(const std::string& name)
{
    std::lock_guard<std::mutex> lk(mu_);
    auto it = by_key_.find(name);
    if (it != by_key_.end())
        return it->second;
    auto gi = std::make_unique<GenInfo>();
    gi->is_symbol = true;
    gi->name = name;
    gi->key = name;
    gi->free = {name};
    GenId id = static_cast<GenId>(infos_.size());
    infos_.push_back(std::move(gi));
    by_key_.emplace(name, id);
    return id;
}

GenId Registry::intern_kernel(Kernel k, const Expr& arg)
{
    std::string key = std::string(kernel_name(k)) + "(" + arg.str() + ")";
    std::set<std::string> fr = arg.free_symbols();
    std::lock_guard<std::mutex> lk(mu_);
    auto it = by_key_.find(key);
    if (it != by_key_.end())
        return it->second;
    auto gi = std::make_unique<GenInfo>();
    gi->is_symbol = false;
    gi->fn = k;
    gi->arg = arg;
    gi->key = key;
    gi->free = std::move(fr);
    GenId id = static_cast<GenId>(infos_.size());
    infos_.push_back(std::move(gi));
    by_key_.emplace(std::move(key), id);
    return id;
}

const GenInfo& Registry::info(GenId g) const
{
    std::lock_guard<std::mutex> lk(mu_);
    return *infos_.at(g);
}

Expr Registry::derivative(GenId g, const std::string& var)
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = dcache_.find({g, var});
        if (it != dcache_.end())
            return it->second;
    }
    const GenInfo& gi = info(g);
    Expr d;
    if (gi.is_symbol) {
        d = Expr(gi.name == var ? 1 : 0);
    } else if (gi.free.count(var)) {
        Expr du = differentiate(gi.arg, var);
        Expr self = Expr::from_rf(RatFun{Poly::generator(g), {}});
        switch (gi.fn) {
        case Kernel::exp: d = self * du; break;
        case Kernel::log: d = du / gi.arg; break;
        case Kernel::sin: d = cos(gi.arg) * du; break;
        case Kernel::cos: d = -(sin(gi.arg) * du); break;
        }
    }
    std::lock_guard<std::mutex> lk(mu_);
    dcache_.emplace(std::make_pair(g, var), d);
    return d;
}

std::vector<Poly> Registry::factors_snapshot() const
{
    std::lock_guard<std::mutex> lk(mu_);
    return factors_;
}

void Registry::add_factor(const Poly& f)
{
    std::lock_guard<std::mutex> lk(mu_);
    for (auto& x : factors_)
        if (x == f)
            return;
    auto pos = std::find_if(factors_.begin(), factors_.end(),
                            [&](const Poly& x) { return x.size() > f.size(); });
    factors_.insert(pos, f);
}

}  // namespace detail

namespace {

const Expr& zero_expr()
{
    static const Expr z = Expr::from_rf(RatFun{});
    return z;
}

// P = c * m * f with f primitive over Z, nonnegative exponents, no monomial
// content and a positive leading coefficient.
struct SplitPoly {
    mpq_class c;
    Mono m;
    Poly f;
};

SplitPoly split_poly(const Poly& p)
{
    SplitPoly s;
    s.m = p.min_mono();
    Poly f0 = p.times_mono(detail::mono_inv(s.m));
    s.c = f0.content();
    s.f = f0.scaled(1 / s.c);
    return s;
}

void add_factor(std::vector<Factor>& den, const Poly& f, int e)
{
    for (auto& x : den)
        if (x.p == f) {
            x.e += e;
            return;
        }
    den.push_back(Factor{f, e});
}

void sort_den(std::vector<Factor>& den)
{
    std::sort(den.begin(), den.end(),
              [](const Factor& a, const Factor& b) { return a.p.compare(b.p) < 0; });
}

// Splits a primitive polynomial into known factors plus at most one new one.
std::vector<Factor> factor_against_known(Poly f)
{
    std::vector<Factor> out;
    if (f.is_constant())
        return out;
    for (const Poly& r : detail::registry().factors_snapshot()) {
        if (r.size() > f.size())
            break;
        while (!f.is_constant()) {
            auto q = f.divide_exact(r);
            if (!q)
                break;
            add_factor(out, r, 1);
            f = std::move(*q);
        }
        if (f.is_constant())
            break;
    }
    if (!f.is_constant()) {
        // normalize sign/content again in case division left a unit
        mpq_class c = f.content();
        f = f.scaled(1 / c);
        detail::registry().add_factor(f);
        add_factor(out, f, 1);
    }
    return out;
}

// Removes common factors between num and den.
void reduce(RatFun& r)
{
    if (r.num.is_zero()) {
        r.den.clear();
        return;
    }
    for (auto& fa : r.den) {
        while (fa.e > 0) {
            auto q = r.num.divide_exact(fa.p);
            if (!q)
                break;
            r.num = std::move(*q);
            --fa.e;
        }
    }
    r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const Factor& f) { return f.e == 0; }),
                r.den.end());
}

Poly expand_den(const std::vector<Factor>& den)
{
    Poly p(mpq_class(1));
    for (auto& f : den)
        p = p * f.p.pow(static_cast<unsigned>(f.e));
    return p;
}

RatFun rf_add(const RatFun& a, const RatFun& b, bool subtract)
{
    if (b.num.is_zero())
        return a;
    if (a.num.is_zero()) {
        RatFun r = b;
        if (subtract)
            r.num = -r.num;
        return r;
    }
    if (a.den.empty() && b.den.empty())
        return RatFun{detail::merge_add(a.num, b.num, subtract), {}};
    std::vector<Factor> lcm = a.den;
    for (auto& f : b.den) {
        bool found = false;
        for (auto& x : lcm)
            if (x.p == f.p) {
                x.e = std::max(x.e, f.e);
                found = true;
            }
        if (!found)
            lcm.push_back(f);
    }
    auto cofactor = [&](const std::vector<Factor>& d) {
        Poly p(mpq_class(1));
        for (auto& l : lcm) {
            int have = 0;
            for (auto& x : d)
                if (x.p == l.p)
                    have = x.e;
            if (l.e > have)
                p = p * l.p.pow(static_cast<unsigned>(l.e - have));
        }
        return p;
    };
    RatFun r;
    r.num = detail::merge_add(a.num * cofactor(a.den), b.num * cofactor(b.den), subtract);
    r.den = std::move(lcm);
    reduce(r);
    sort_den(r.den);
    return r;
}

// Cancels factors of `den` out of `num`, lowering exponents in place.
void cross_cancel(Poly& num, std::vector<Factor>& den)
{
    for (auto& fa : den) {
        while (fa.e > 0 && !num.is_zero()) {
            auto q = num.divide_exact(fa.p);
            if (!q)
                break;
            num = std::move(*q);
            --fa.e;
        }
    }
    den.erase(std::remove_if(den.begin(), den.end(), [](const Factor& f) { return f.e == 0; }),
              den.end());
}

RatFun rf_mul(const RatFun& a, const RatFun& b)
{
    if (a.num.is_zero() || b.num.is_zero())
        return RatFun{};
    if (a.den.empty() && b.den.empty())
        return RatFun{a.num * b.num, {}};
    Poly an = a.num, bn = b.num;
    std::vector<Factor> ad = a.den, bd = b.den;
    cross_cancel(an, bd);
    cross_cancel(bn, ad);
    RatFun r;
    r.num = an * bn;
    r.den = std::move(ad);
    for (auto& f : bd)
        add_factor(r.den, f.p, f.e);
    sort_den(r.den);
    return r;
}

RatFun rf_inverse(const RatFun& a)
{
    if (a.num.is_zero())
        throw EvalError(EvalError::Kind::division_by_zero, "division by zero expression");
    SplitPoly s = split_poly(a.num);
    RatFun r;
    r.num = expand_den(a.den).times_mono(detail::mono_inv(s.m)).scaled(1 / s.c);
    r.den = factor_against_known(s.f);
    sort_den(r.den);
    return r;
}

std::string rational_str(const mpq_class& q)
{
    return q.get_str();
}

struct DisplayTerm {
    int degree;
    std::string body;  // monomial text without coefficient
    std::string text;  // full signed text
};

std::string poly_str(const Poly& p)
{
    if (p.is_zero())
        return "0";
    auto& reg = detail::registry();
    std::vector<DisplayTerm> items;
    for (const Term& t : p.terms()) {
        std::vector<std::pair<std::string, int>> pos, neg;
        int deg = 0;
        for (auto& [g, e] : t.m) {
            const auto& gi = reg.info(g);
            deg += e;
            if (e > 0)
                pos.emplace_back(gi.key, e);
            else
                neg.emplace_back(gi.key, -e);
        }
        std::sort(pos.begin(), pos.end());
        std::sort(neg.begin(), neg.end());
        auto join = [](const std::vector<std::pair<std::string, int>>& v) {
            std::string s;
            for (auto& [k, e] : v) {
                if (!s.empty())
                    s += "*";
                s += k;
                if (e != 1)
                    s += "^" + std::to_string(e);
            }
            return s;
        };
        std::string body = join(pos);
        std::string nb = join(neg);
        mpq_class c = abs(t.c);
        std::string text;
        if (body.empty()) {
            text = rational_str(c);
        } else {
            text = (c == 1) ? body : rational_str(c) + "*" + body;
        }
        if (!nb.empty())
            text += (neg.size() > 1 || neg[0].second != 1) ? "/(" + nb + ")" : "/" + nb;
        text = (t.c < 0 ? "-" : "+") + text;
        items.push_back(DisplayTerm{deg, body + "/" + nb, text});
    }
    std::sort(items.begin(), items.end(), [](const DisplayTerm& a, const DisplayTerm& b) {
        if (a.degree != b.degree)
            return a.degree > b.degree;
        return a.body < b.body;
    });
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string& t = items[i].text;
        if (i == 0)
            s += (t[0] == '-') ? t : t.substr(1);
        else
            s += std::string(" ") + t[0] + " " + t.substr(1);
    }
    return s;
}

}  // namespace

Expr::Expr() : rf_(zero_expr().rf_) {}

Expr::Expr(long v) : Expr(Rational(v)) {}

Expr::Expr(const Rational& q)
{
    rf_ = std::make_shared<const RatFun>(RatFun{Poly(q), {}});
}

Expr Expr::from_rf(RatFun r)
{
    Expr e(0L);
    e.rf_ = std::make_shared<const RatFun>(std::move(r));
    return e;
}

Expr Expr::symbol(std::string_view name)
{
    GenId g = detail::registry().intern_symbol(std::string(name));
    return from_rf(RatFun{Poly::generator(g), {}});
}

Expr Expr::apply(Kernel k, const Expr& arg)
{
    if (auto c = arg.constant_value()) {
        if (k == Kernel::exp && *c == 0)
            return Expr(1);
        if (k == Kernel::log && *c == 1)
            return Expr(0);
        if (k == Kernel::sin && *c == 0)
            return Expr(0);
        if (k == Kernel::cos && *c == 0)
            return Expr(1);
        if (k == Kernel::log && *c <= 0)
            throw EvalError(EvalError::Kind::log_domain, "log of a non-positive constant");
    }
    GenId g = detail::registry().intern_kernel(k, arg);
    return from_rf(RatFun{Poly::generator(g), {}});
}

bool Expr::is_zero() const { return rf_->num.is_zero(); }

bool Expr::is_constant() const { return rf_->den.empty() && rf_->num.is_constant(); }

std::optional<Rational> Expr::constant_value() const
{
    if (!is_constant())
        return std::nullopt;
    return rf_->num.constant_value();
}

bool Expr::has_kernels() const
{
    auto& reg = detail::registry();
    auto check = [&](const Poly& p) {
        for (GenId g : p.generators())
            if (!reg.info(g).is_symbol)
                return true;
        return false;
    };
    if (check(rf_->num))
        return true;
    for (auto& f : rf_->den)
        if (check(f.p))
            return true;
    return false;
}

bool Expr::identical(const Expr& o) const
{
    if (rf_ == o.rf_)
        return true;
    if (!(rf_->num == o.rf_->num) || rf_->den.size() != o.rf_->den.size())
        return false;
    for (std::size_t i = 0; i < rf_->den.size(); ++i)
        if (rf_->den[i].e != o.rf_->den[i].e || !(rf_->den[i].p == o.rf_->den[i].p))
            return false;
    return true;
}

std::set<std::string> Expr::free_symbols() const
{
    std::set<std::string> s;
    auto& reg = detail::registry();
    auto add = [&](const Poly& p) {
        for (GenId g : p.generators()) {
            const auto& gi = reg.info(g);
            s.insert(gi.free.begin(), gi.free.end());
        }
    };
    add(rf_->num);
    for (auto& f : rf_->den)
        add(f.p);
    return s;
}

std::size_t Expr::term_count() const
{
    std::size_t n = rf_->num.size();
    for (auto& f : rf_->den)
        n += f.p.size();
    return n;
}

std::string Expr::str() const
{
    const RatFun& r = *rf_;
    std::string num = poly_str(r.num);
    if (r.den.empty())
        return num;
    std::vector<std::string> fs;
    for (auto& f : r.den) {
        std::string s = "(" + poly_str(f.p) + ")";
        if (f.e != 1)
            s += "^" + std::to_string(f.e);
        fs.push_back(std::move(s));
    }
    std::sort(fs.begin(), fs.end());
    std::string den;
    for (auto& s : fs)
        den += (den.empty() ? "" : "*") + s;
    if (r.num.size() > 1)
        num = "(" + num + ")";
    return num + "/" + (fs.size() > 1 ? "(" + den + ")" : den);
}

Expr Expr::operator-() const
{
    RatFun r = *rf_;
    r.num = -r.num;
    return from_rf(std::move(r));
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }
Expr& Expr::operator/=(const Expr& o) { return *this = *this / o; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::from_rf(rf_add(a.rf(), b.rf(), false)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::from_rf(rf_add(a.rf(), b.rf(), true)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::from_rf(rf_mul(a.rf(), b.rf())); }

Expr operator/(const Expr& a, const Expr& b)
{
    if (b.is_zero())
        throw EvalError(EvalError::Kind::division_by_zero, "division by zero expression");
    if (b.rf().den.empty() && b.rf().num.is_monomial()) {
        const Term& t = b.rf().num.leading();
        RatFun r = a.rf();
        r.num = r.num.times_mono(detail::mono_inv(t.m)).scaled(1 / t.c);
        return Expr::from_rf(std::move(r));
    }
    return Expr::from_rf(rf_mul(a.rf(), rf_inverse(b.rf())));
}

Expr pow(const Expr& base, long n)
{
    if (n == 0) {
        if (base.is_zero())
            throw EvalError(EvalError::Kind::division_by_zero, "0^0 is undefined");
        return Expr(1);
    }
    if (n < 0) {
        if (base.is_zero())
            throw EvalError(EvalError::Kind::division_by_zero, "negative power of zero");
        return pow(Expr(1) / base, -n);
    }
    const RatFun& r = base.rf();
    if (r.den.empty())
        return Expr::from_rf(RatFun{r.num.pow(static_cast<unsigned>(n)), {}});
    RatFun out{r.num.pow(static_cast<unsigned>(n)), r.den};
    for (auto& f : out.den)
        f.e *= static_cast<int>(n);
    return Expr::from_rf(std::move(out));
}

Expr exp(const Expr& u) { return Expr::apply(Kernel::exp, u); }
Expr log(const Expr& u) { return Expr::apply(Kernel::log, u); }
Expr sin(const Expr& u) { return Expr::apply(Kernel::sin, u); }
Expr cos(const Expr& u) { return Expr::apply(Kernel::cos, u); }

namespace {

Expr poly_to_expr(const Poly& p) { return Expr::from_rf(RatFun{p, {}}); }

// d(num)/dvar as a rational function: sum over generators of dN/dg * dg/dvar.
Expr poly_derivative(const Poly& p, const std::string& var)
{
    auto& reg = detail::registry();
    Expr acc;
    for (GenId g : p.generators()) {
        const auto& gi = reg.info(g);
        if (!gi.free.count(var))
            continue;
        Poly pg = p.partial(g);
        if (pg.is_zero())
            continue;
        if (gi.is_symbol) {
            acc += poly_to_expr(pg);
        } else {
            Expr dg = reg.derivative(g, var);
            if (!dg.is_zero())
                acc += poly_to_expr(pg) * dg;
        }
    }
    return acc;
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var_sv)
{
    std::string var(var_sv);
    const RatFun& r = e.rf();
    Expr dn = poly_derivative(r.num, var);
    if (r.den.empty())
        return dn;
    // d(N/D) = dN/D - N/D * sum e_i f_i'/f_i
    Expr inv_d = Expr::from_rf(RatFun{Poly(mpq_class(1)), r.den});
    Expr n = poly_to_expr(r.num);
    Expr logd;
    for (auto& f : r.den) {
        Expr df = poly_derivative(f.p, var);
        if (df.is_zero())
            continue;
        Expr inv_f = Expr::from_rf(RatFun{Poly(mpq_class(1)), {Factor{f.p, 1}}});
        logd += Expr(f.e) * df * inv_f;
    }
    return (dn - n * logd) * inv_d;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl)
{
    auto& reg = detail::registry();
    std::map<GenId, Expr> cache;
    auto gen_expr = [&](GenId g) -> const Expr& {
        auto it = cache.find(g);
        if (it != cache.end())
            return it->second;
        const auto& gi = reg.info(g);
        Expr v;
        if (gi.is_symbol) {
            auto r = repl.find(gi.name);
            v = (r != repl.end()) ? r->second : Expr::symbol(gi.name);
        } else {
            v = Expr::apply(gi.fn, substitute(gi.arg, repl));
        }
        return cache.emplace(g, v).first->second;
    };
    auto poly_sub = [&](const Poly& p) {
        Expr acc;
        for (const Term& t : p.terms()) {
            Expr term(t.c);
            for (auto& [g, k] : t.m)
                term *= pow(gen_expr(g), k);
            acc += term;
        }
        return acc;
    };
    Expr out = poly_sub(e.rf().num);
    for (auto& f : e.rf().den)
        out /= pow(poly_sub(f.p), f.e);
    return out;
}

}  // namespace nullasd
