#include "nullasd/detail/poly.hpp"

#include <algorithm>
#include <cassert>

namespace nullasd::detail {

int lex_cmp(const Mono& a, const Mono& b)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        GenId ga = i < a.size() ? a[i].first : UINT32_MAX;
        GenId gb = j < b.size() ? b[j].first : UINT32_MAX;
        std::int32_t ea = 0, eb = 0;
        if (ga == gb) {
            ea = a[i++].second;
            eb = b[j++].second;
        } else if (ga < gb) {
            ea = a[i++].second;
        } else {
            eb = b[j++].second;
        }
        if (ea != eb)
            return ea < eb ? -1 : 1;
    }
    return 0;
}

Mono mono_mul(const Mono& a, const Mono& b)
{
    Mono r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            std::int32_t e = a[i].second + b[j].second;
            if (e != 0)
                r.emplace_back(a[i].first, e);
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    r.insert(r.end(), a.begin() + i, a.end());
    r.insert(r.end(), b.begin() + j, b.end());
    return r;
}

Mono mono_inv(const Mono& a)
{
    Mono r = a;
    for (auto& p : r)
        p.second = -p.second;
    return r;
}

std::int32_t mono_exp(const Mono& m, GenId g)
{
    auto it = std::lower_bound(m.begin(), m.end(), g,
                               [](const auto& p, GenId v) { return p.first < v; });
    return (it != m.end() && it->first == g) ? it->second : 0;
}

int mono_degree(const Mono& m)
{
    int d = 0;
    for (auto& p : m)
        d += p.second;
    return d;
}

Poly::Poly(const mpq_class& c)
{
    if (c != 0)
        terms_.push_back(Term{Mono{}, c});
}

Poly Poly::generator(GenId g, std::int32_t e)
{
    if (e == 0)
        return Poly(mpq_class(1));
    return Poly(std::vector<Term>{Term{Mono{{g, e}}, mpq_class(1)}});
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return lex_cmp(x.m, y.m) < 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && lex_cmp(out.back().m, t.m) == 0)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
        if (out.back().c == 0)
            out.pop_back();
    }
    return Poly(std::move(out));
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.empty());
}

mpq_class Poly::constant_value() const
{
    if (terms_.size() == 1 && terms_[0].m.empty())
        return terms_[0].c;
    return 0;
}

bool Poly::operator==(const Poly& o) const
{
    if (terms_.size() != o.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m)
            return false;
    return true;
}

int Poly::compare(const Poly& o) const
{
    if (terms_.size() != o.terms_.size())
        return terms_.size() < o.terms_.size() ? -1 : 1;
    for (std::size_t i = terms_.size(); i-- > 0;) {
        int c = lex_cmp(terms_[i].m, o.terms_[i].m);
        if (c != 0)
            return c;
        int k = cmp(terms_[i].c, o.terms_[i].c);
        if (k != 0)
            return k < 0 ? -1 : 1;
    }
    return 0;
}

Poly Poly::operator-() const
{
    std::vector<Term> t = terms_;
    for (auto& x : t)
        x.c = -x.c;
    return Poly(std::move(t));
}

Poly merge_add(const Poly& a, const Poly& b, bool subtract)
{
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = lex_cmp(a.terms_[i].m, b.terms_[j].m);
        if (c == 0) {
            mpq_class s = subtract ? mpq_class(a.terms_[i].c - b.terms_[j].c)
                                   : mpq_class(a.terms_[i].c + b.terms_[j].c);
            if (s != 0)
                out.push_back(Term{a.terms_[i].m, std::move(s)});
            ++i;
            ++j;
        } else if (c < 0) {
            out.push_back(a.terms_[i++]);
        } else {
            out.push_back(b.terms_[j++]);
            if (subtract)
                out.back().c = -out.back().c;
        }
    }
    for (; i < a.terms_.size(); ++i)
        out.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) {
        out.push_back(b.terms_[j]);
        if (subtract)
            out.back().c = -out.back().c;
    }
    return Poly(std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) { return merge_add(a, b, false); }
Poly operator-(const Poly& a, const Poly& b) { return merge_add(a, b, true); }

Poly Poly::scaled(const mpq_class& c) const
{
    if (c == 0)
        return Poly();
    std::vector<Term> t = terms_;
    for (auto& x : t)
        x.c *= c;
    return Poly(std::move(t));
}

Poly Poly::times_mono(const Mono& m) const
{
    if (m.empty())
        return *this;
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (auto& x : terms_)
        t.push_back(Term{mono_mul(x.m, m), x.c});
    return Poly(std::move(t));  // lex order is a group order: sortedness kept
}

namespace {

Poly mul_range(const std::vector<Term>& a, std::size_t lo, std::size_t hi, const Poly& b)
{
    if (hi - lo == 1) {
        const Term& t = a[lo];
        return b.times_mono(t.m).scaled(t.c);
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return mul_range(a, lo, mid, b) + mul_range(a, mid, hi, b);
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    const Poly& small = a.size() <= b.size() ? a : b;
    const Poly& large = a.size() <= b.size() ? b : a;
    return mul_range(small.terms(), 0, small.size(), large);
}

Poly Poly::pow(unsigned n) const
{
    Poly result(mpq_class(1));
    Poly base = *this;
    while (n) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return result;
}

Mono Poly::min_mono() const
{
    if (terms_.empty())
        return {};
    std::vector<GenId> gens = generators();
    Mono r;
    for (GenId g : gens) {
        std::int32_t lo = low_degree_in(g);
        if (lo != 0)
            r.emplace_back(g, lo);
    }
    return r;
}

std::int32_t Poly::degree_in(GenId g) const
{
    std::int32_t d = INT32_MIN;
    for (auto& t : terms_)
        d = std::max(d, mono_exp(t.m, g));
    return terms_.empty() ? 0 : d;
}

std::int32_t Poly::low_degree_in(GenId g) const
{
    std::int32_t d = INT32_MAX;
    for (auto& t : terms_)
        d = std::min(d, mono_exp(t.m, g));
    return terms_.empty() ? 0 : d;
}

std::vector<GenId> Poly::generators() const
{
    std::vector<GenId> gs;
    for (auto& t : terms_)
        for (auto& p : t.m)
            gs.push_back(p.first);
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    return gs;
}

bool Poly::mentions(GenId g) const
{
    for (auto& t : terms_)
        if (mono_exp(t.m, g) != 0)
            return true;
    return false;
}

Poly Poly::partial(GenId g) const
{
    std::vector<Term> out;
    for (auto& t : terms_) {
        std::int32_t e = mono_exp(t.m, g);
        if (e == 0)
            continue;
        Mono m = mono_mul(t.m, Mono{{g, -1}});
        out.push_back(Term{std::move(m), t.c * e});
    }
    return from_terms(std::move(out));
}

std::optional<Poly> Poly::divide_exact(const Poly& f) const
{
    assert(!f.is_zero());
    if (is_zero())
        return Poly();
    if (f.is_monomial()) {
        const Term& t = f.terms_[0];
        return times_mono(mono_inv(t.m)).scaled(1 / t.c);
    }
    if (f.size() > size())
        return std::nullopt;
    // shift the dividend to nonnegative exponents
    Mono shift = mono_inv(min_mono());
    for (auto it = shift.begin(); it != shift.end();)
        it = it->second < 0 ? shift.erase(it) : it + 1;
    Poly r = times_mono(shift);
    for (GenId g : f.generators())
        if (f.degree_in(g) > r.degree_in(g))
            return std::nullopt;
    const Term& lf = f.leading();
    std::vector<Term> q;
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        Mono m = mono_mul(lr.m, mono_inv(lf.m));
        for (auto& p : m)
            if (p.second < 0)
                return std::nullopt;
        mpq_class c = lr.c / lf.c;
        r = r - f.times_mono(m).scaled(c);
        q.push_back(Term{std::move(m), std::move(c)});
    }
    Poly quo = from_terms(std::move(q));
    return quo.times_mono(mono_inv(shift));
}

mpq_class Poly::content() const
{
    if (terms_.empty())
        return 1;
    mpz_class num = 0, den = 1;
    for (auto& t : terms_) {
        num = gcd(num, t.c.get_num());
        den = lcm(den, t.c.get_den());
    }
    mpq_class c(num, den);
    c.canonicalize();
    if (leading().c < 0)
        c = -c;
    return c;
}

}  // namespace nullasd::detail
