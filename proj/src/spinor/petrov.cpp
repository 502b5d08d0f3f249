#include "nullasd/spinor.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace nullasd {

namespace {

constexpr int binom4[5] = {1, 4, 6, 4, 1};

// Univariate polynomials over Q, coefficients low to high, no trailing zeros.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p)
{
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

QPoly sub(QPoly a, const QPoly& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    QPoly q;
    if (degree(a) >= degree(b))
        q.assign(a.size() - b.size() + 1, 0);
    while (!a.empty() && degree(a) >= degree(b)) {
        int shift = degree(a) - degree(b);
        mpq_class f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly monic(QPoly p)
{
    if (p.empty())
        return p;
    mpq_class lc = p.back();
    for (auto& c : p)
        c /= lc;
    return p;
}

QPoly gcd(QPoly a, QPoly b)
{
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Yun's algorithm: returns factors a_i with f = c * prod a_i^i.
std::vector<QPoly> squarefree(const QPoly& f)
{
    std::vector<QPoly> out;
    QPoly fp = derivative(f);
    QPoly a0 = gcd(f, fp);
    QPoly b = divmod(f, a0).first;
    QPoly c = divmod(fp, a0).first;
    QPoly d = sub(c, derivative(b));
    while (degree(b) > 0) {
        QPoly a = gcd(b, d);
        out.push_back(a);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = sub(c, derivative(b));
    }
    return out;
}

int sign_changes(const std::vector<int>& s)
{
    int n = 0, last = 0;
    for (int v : s) {
        if (v == 0)
            continue;
        if (last != 0 && v != last)
            ++n;
        last = v;
    }
    return n;
}

// Distinct real roots of a square-free polynomial by Sturm's theorem.
int real_root_count(const QPoly& p)
{
    if (degree(p) <= 0)
        return 0;
    std::vector<QPoly> seq{p, derivative(p)};
    while (degree(seq.back()) > 0) {
        auto r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(r);
    }
    std::vector<int> pos, neg;
    for (auto& q : seq) {
        int lc = sgn(q.back());
        pos.push_back(lc);
        neg.push_back(degree(q) % 2 ? -lc : lc);
    }
    return sign_changes(neg) - sign_changes(pos);
}

PetrovType type_of(const std::vector<int>& part)
{
    if (part.empty())
        return PetrovType::O;
    if (part[0] == 4)
        return PetrovType::N;
    if (part[0] == 3)
        return PetrovType::III;
    if (part[0] == 2)
        return part.size() == 2 ? PetrovType::D : PetrovType::II;
    return PetrovType::I;
}

// Binary forms sum a_k x^k y^(n-k) in double precision.
using Form = std::vector<double>;

Form dx(const Form& f)
{
    Form r(f.size() > 1 ? f.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < f.size(); ++k)
        r[k - 1] = static_cast<double>(k) * f[k];
    return r;
}

Form dy(const Form& f)
{
    int n = static_cast<int>(f.size()) - 1;
    Form r(n > 0 ? n : 1, 0.0);
    for (int k = 0; k < n; ++k)
        r[k] = static_cast<double>(n - k) * f[k];
    return r;
}

Form mul(const Form& a, const Form& b)
{
    Form r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

Form minus(Form a, const Form& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

double max_abs(const Form& f)
{
    double m = 0;
    for (double v : f)
        m = std::max(m, std::fabs(v));
    return m;
}

// Real-root annotation of a numeric quartic whose multiplicity partition is known.
RootStructure annotate_numeric(const std::array<double, 5>& c, const std::vector<int>& part)
{
    RootStructure rs;
    if (part.empty())
        return rs;
    // Move every root to the finite chart with a real substitution
    // mu0 -> nu0 + s nu1; the new leading coefficient is f(s, 1).
    auto f_at = [&](double s) {
        double v = 0;
        for (int k = 0; k < 5; ++k)
            v += c[k] * std::pow(s, 4 - k);
        return v;
    };
    double best = 0, s = 0;
    for (double cand : {0.0, 1.0, -1.0, 2.0, -0.5, 0.5, -2.0, 3.0, 1.0 / 3.0}) {
        double v = std::fabs(f_at(cand));
        if (v > best * 1.5) {
            best = v;
            s = cand;
        }
    }
    // Coefficient of nu1^j nu0^(4-j): sum_k c_k binom(4-k, j-k) s^(j-k).
    auto binom = [](int n, int k) {
        if (k < 0 || k > n)
            return 0.0;
        double r = 1;
        for (int i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    };
    Eigen::Matrix<double, 5, 1> g;
    for (int j = 0; j < 5; ++j) {
        double v = 0;
        for (int k = 0; k <= j; ++k)
            v += c[k] * binom(4 - k, j - k) * std::pow(s, j - k);
        g[j] = v;
    }
    Eigen::PolynomialSolver<double, 4> solver(g);
    std::vector<std::complex<double>> roots(solver.roots().data(), solver.roots().data() + 4);
    std::vector<bool> used(4, false);
    std::vector<int> sorted = part;
    std::sort(sorted.rbegin(), sorted.rend());
    for (int m : sorted) {
        // Choose the tightest unused cluster of size m.
        std::vector<int> best_set;
        double best_spread = INFINITY;
        for (int mask = 1; mask < 16; ++mask) {
            if (__builtin_popcount(mask) != m)
                continue;
            std::vector<int> idx;
            bool ok = true;
            for (int i = 0; i < 4; ++i)
                if (mask & (1 << i)) {
                    if (used[i])
                        ok = false;
                    idx.push_back(i);
                }
            if (!ok)
                continue;
            double spread = 0;
            for (int i : idx)
                for (int j : idx)
                    spread = std::max(spread, std::abs(roots[i] - roots[j]));
            if (spread < best_spread) {
                best_spread = spread;
                best_set = idx;
            }
        }
        std::complex<double> mean = 0;
        for (int i : best_set) {
            used[i] = true;
            mean += roots[i];
        }
        mean /= static_cast<double>(m);
        double thr = (m == 1 ? 1e-7 : 1e-4) * (1 + std::abs(mean));
        if (std::fabs(mean.imag()) < thr)
            rs.real.push_back(m);
        else
            rs.complex_pairs.push_back(m);
    }
    // Conjugate partners were counted twice.
    std::vector<int> pairs;
    std::sort(rs.complex_pairs.begin(), rs.complex_pairs.end(), std::greater<>());
    for (std::size_t i = 0; i + 1 < rs.complex_pairs.size(); i += 2)
        pairs.push_back(rs.complex_pairs[i]);
    rs.complex_pairs = pairs;
    std::sort(rs.real.begin(), rs.real.end(), std::greater<>());
    return rs;
}

}  // namespace

const char* petrov_name(PetrovType t)
{
    switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::D: return "D";
    case PetrovType::III: return "III";
    case PetrovType::N: return "N";
    case PetrovType::O: return "O";
    }
    return "?";
}

PetrovResult classify_quartic(const std::array<Rational, 5>& psi)
{
    PetrovResult r;
    r.exact = true;
    QPoly p;
    for (int k = 0; k < 5; ++k)
        p.push_back(psi[k] * binom4[k]);
    trim(p);
    if (p.empty()) {
        r.type = PetrovType::O;
        return r;
    }
    int at_infinity = 4 - degree(p);
    if (at_infinity > 0) {
        r.partition.push_back(at_infinity);
        r.roots.real.push_back(at_infinity);
    }
    if (degree(p) > 0) {
        auto factors = squarefree(p);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            int mult = static_cast<int>(i) + 1;
            int n = degree(factors[i]);
            int nreal = real_root_count(factors[i]);
            for (int j = 0; j < n; ++j)
                r.partition.push_back(mult);
            for (int j = 0; j < nreal; ++j)
                r.roots.real.push_back(mult);
            for (int j = 0; j < (n - nreal) / 2; ++j)
                r.roots.complex_pairs.push_back(mult);
        }
    }
    std::sort(r.partition.rbegin(), r.partition.rend());
    std::sort(r.roots.real.rbegin(), r.roots.real.rend());
    std::sort(r.roots.complex_pairs.rbegin(), r.roots.complex_pairs.rend());
    r.type = type_of(r.partition);
    return r;
}

// Numeric multiple roots are ill-conditioned, so the type is decided by the
// covariants: I = J = 0 with vanishing Hessian is N, otherwise III;
// I^3 = 6 J^2 with vanishing sextic covariant is D, otherwise II.
PetrovResult classify_quartic(const std::array<double, 5>& psi, double tol)
{
    PetrovResult r;
    double scale = 0;
    for (double v : psi)
        scale = std::max(scale, std::fabs(v));
    if (scale == 0 || !std::isfinite(scale)) {
        r.type = PetrovType::O;
        return r;
    }
    std::array<double, 5> p;
    for (int k = 0; k < 5; ++k)
        p[k] = psi[k] / scale;
    auto [I, J] = quartic_invariants(p);
    Form f(5);
    for (int k = 0; k < 5; ++k)
        f[k] = binom4[k] * p[k];
    Form fx = dx(f), fy = dy(f);
    Form H = minus(mul(dx(fx), dy(fy)), mul(dx(fy), dx(fy)));
    Form T = minus(mul(fx, dy(H)), mul(fy, dx(H)));
    bool ij_zero = std::fabs(I) < tol && std::fabs(J) < tol;
    if (ij_zero) {
        r.partition = max_abs(H) < tol * 100 ? std::vector<int>{4} : std::vector<int>{3, 1};
    } else if (std::fabs(I * I * I - 6 * J * J) < tol * (std::fabs(I * I * I) + 6 * J * J)) {
        r.partition = max_abs(T) < tol * 1e3 ? std::vector<int>{2, 2} : std::vector<int>{2, 1, 1};
    } else {
        r.partition = {1, 1, 1, 1};
    }
    r.type = type_of(r.partition);
    std::array<double, 5> c;
    for (int k = 0; k < 5; ++k)
        c[k] = f[k];
    r.roots = annotate_numeric(c, r.partition);
    return r;
}

PetrovResult petrov_classify(const WeylSpinor& w, const Assignment& at)
{
    PointEvaluator pe(at);
    std::array<Number, 5> v;
    bool exact = true;
    for (int k = 0; k < 5; ++k) {
        v[k] = pe.eval(w.psi[k]);
        exact = exact && v[k].exact();
    }
    if (exact) {
        std::array<Rational, 5> q;
        for (int k = 0; k < 5; ++k)
            q[k] = v[k].q();
        return classify_quartic(q);
    }
    std::array<double, 5> d;
    for (int k = 0; k < 5; ++k)
        d[k] = v[k].to_double();
    return classify_quartic(d);
}

std::vector<SampledPetrov> petrov_at_samples(const WeylSpinor& w, const std::vector<Expr>& guards,
                                             const SamplingConfig& cfg)
{
    std::vector<Expr> all(guards);
    all.insert(all.end(), w.psi.begin(), w.psi.end());
    std::set<std::string> names;
    for (const auto& e : all) {
        auto fs = e.free_symbols();
        names.insert(fs.begin(), fs.end());
    }
    std::vector<SampledPetrov> out;
    Sampler s(cfg.seed);
    for (int i = 0; i < 10 * cfg.count && static_cast<int>(out.size()) < cfg.count; ++i) {
        Assignment pt = s.point(names);
        if (!point_is_regular(all, pt))
            continue;
        try {
            out.push_back({pt, petrov_classify(w, pt)});
        } catch (const EvalError&) {
        }
    }
    if (out.empty())
        throw GeometryError("no regular sample point for classification");
    return out;
}

}  // namespace nullasd
