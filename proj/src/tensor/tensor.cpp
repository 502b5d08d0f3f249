#include "nullasd/tensor.hpp"

#include <algorithm>
#include <set>

namespace nullasd {

void validate_chart(const Chart& c)
{
    std::set<std::string> seen;
    for (const auto& n : c) {
        if (n.empty())
            throw GeometryError("empty coordinate name");
        if (!seen.insert(n).second)
            throw GeometryError("duplicate coordinate name '" + n + "'");
    }
}

TensorField::TensorField(Chart chart, std::vector<Valence> valence)
    : chart_(std::move(chart)), valence_(std::move(valence))
{
    std::size_t n = 1;
    for (std::size_t i = 0; i < valence_.size(); ++i)
        n *= 4;
    data_.assign(n, Expr());
}

std::size_t TensorField::flat(std::initializer_list<int> idx) const
{
    if (idx.size() != valence_.size())
        throw GeometryError("tensor index count does not match rank");
    std::size_t k = 0;
    for (int i : idx)
        k = k * 4 + static_cast<std::size_t>(i);
    return k;
}

std::vector<int> TensorField::unflat(std::size_t i) const
{
    std::vector<int> out(valence_.size());
    for (std::size_t p = valence_.size(); p-- > 0;) {
        out[p] = static_cast<int>(i % 4);
        i /= 4;
    }
    return out;
}

std::string TensorField::label(std::size_t i, const std::string& name) const
{
    std::string s = name + "[";
    auto ix = unflat(i);
    for (std::size_t p = 0; p < ix.size(); ++p) {
        if (p)
            s += ",";
        s += chart_[ix[p]];
    }
    return s + "]";
}

Expr VectorField::apply(const Expr& f) const
{
    Expr out;
    for (int i = 0; i < 4; ++i)
        if (!c[i].is_zero())
            out += c[i] * differentiate(f, chart[i]);
    return out;
}

Expr OneForm::operator()(const VectorField& v) const
{
    Expr out;
    for (int i = 0; i < 4; ++i)
        out += c[i] * v.c[i];
    return out;
}

OneForm operator+(const OneForm& a, const OneForm& b)
{
    OneForm r{a.chart, {}};
    for (int i = 0; i < 4; ++i)
        r.c[i] = a.c[i] + b.c[i];
    return r;
}

OneForm operator-(const OneForm& a, const OneForm& b)
{
    OneForm r{a.chart, {}};
    for (int i = 0; i < 4; ++i)
        r.c[i] = a.c[i] - b.c[i];
    return r;
}

OneForm operator*(const Expr& f, const OneForm& a)
{
    OneForm r{a.chart, {}};
    for (int i = 0; i < 4; ++i)
        r.c[i] = f * a.c[i];
    return r;
}

OneForm coordinate_form(const Chart& c, int i)
{
    OneForm r{c, {}};
    r.c[i] = Expr(1);
    return r;
}

VectorField coordinate_vector(const Chart& c, int i)
{
    VectorField r{c, {}};
    r.c[i] = Expr(1);
    return r;
}

Metric metric_from_products(const Chart& c, const std::vector<ProductTerm>& terms)
{
    std::array<std::array<Expr, 4>, 4> m{};
    for (const auto& t : terms)
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                Expr v = t.a.c[a] * t.b.c[b] + t.a.c[b] * t.b.c[a];
                if (!v.is_zero())
                    m[a][b] += t.coef * v;
            }
    return Metric(c, m);
}

Metric::Metric(Chart chart, const std::array<std::array<Expr, 4>, 4>& comps) : chart_(std::move(chart))
{
    validate_chart(chart_);
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            g_[a * 4 + b] = comps[a][b];
}

std::array<Expr, 16> Metric::matrix() const
{
    std::array<Expr, 16> m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m[a * 4 + b] = (*this)(a, b);
    return m;
}

Expr Metric::det() const { return determinant4(matrix()); }

TensorField Metric::as_tensor() const
{
    TensorField t(chart_, {Valence::down, Valence::down});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            t(a, b) = (*this)(a, b);
    return t;
}

std::vector<Expr> Metric::components() const
{
    std::vector<Expr> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            out.push_back((*this)(a, b));
    return out;
}

namespace {

Expr det3(const std::array<Expr, 16>& m, int skip_row, int skip_col)
{
    int r[3], c[3];
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != skip_row)
            r[k++] = i;
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != skip_col)
            c[k++] = i;
    auto at = [&](int i, int j) -> const Expr& { return m[r[i] * 4 + c[j]]; };
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

}  // namespace

Expr determinant4(const std::array<Expr, 16>& m)
{
    Expr d;
    for (int j = 0; j < 4; ++j) {
        if (m[j].is_zero())
            continue;
        Expr minor = det3(m, 0, j);
        d += (j % 2 ? -m[j] : m[j]) * minor;
    }
    return d;
}

std::array<Expr, 16> inverse4(const std::array<Expr, 16>& m)
{
    std::array<Expr, 16> cof;
    Expr d;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Expr c = det3(m, i, j);
            cof[i * 4 + j] = ((i + j) % 2) ? -c : c;
        }
    for (int j = 0; j < 4; ++j)
        d += m[j] * cof[j];
    if (d.is_zero())
        throw GeometryError("matrix is singular: determinant normalizes to zero");
    std::array<Expr, 16> inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            inv[i * 4 + j] = cof[j * 4 + i] / d;
    return inv;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b)
{
    VectorField r{a.chart, {}};
    for (int i = 0; i < 4; ++i)
        r.c[i] = a.apply(b.c[i]) - b.apply(a.c[i]);
    return r;
}

OneForm lower(const Metric& g, const VectorField& v)
{
    OneForm w{g.chart(), {}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (!v.c[b].is_zero())
                w.c[a] += g(a, b) * v.c[b];
    return w;
}

Expr inner(const Metric& g, const VectorField& a, const VectorField& b) { return lower(g, a)(b); }

TensorField exterior_derivative(const OneForm& w)
{
    TensorField d(w.chart, {Valence::down, Valence::down});
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            Expr v = differentiate(w.c[b], w.chart[a]) - differentiate(w.c[a], w.chart[b]);
            d(a, b) = v;
            d(b, a) = -v;
        }
    return d;
}

ThreeForm wedge(const OneForm& a, const TensorField& f)
{
    ThreeForm t{a.chart, {}};
    for (int s = 0; s < 4; ++s) {
        auto [i, j, k] = ThreeForm::slots[s];
        t.c[s] = a.c[i] * f(j, k) + a.c[j] * f(k, i) + a.c[k] * f(i, j);
    }
    return t;
}

Curvature::Curvature(Metric g) : g_(std::move(g)) {}

const TensorField& Curvature::inverse()
{
    if (!inv_) {
        auto inv = inverse4(g_.matrix());
        TensorField t(g_.chart(), {Valence::up, Valence::up});
        for (int i = 0; i < 16; ++i)
            t.at_flat(i) = inv[i];
        inv_ = std::move(t);
    }
    return *inv_;
}

const TensorField& Curvature::christoffel()
{
    if (!gam_) {
        const auto& gi = inverse();
        const Chart& x = g_.chart();
        // dg[c][a][b] = d_c g_ab
        std::array<Expr, 64> dg;
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = a; b < 4; ++b) {
                    Expr d = differentiate(g_(a, b), x[c]);
                    dg[(c * 4 + a) * 4 + b] = d;
                    dg[(c * 4 + b) * 4 + a] = d;
                }
        auto D = [&](int c, int a, int b) -> const Expr& { return dg[(c * 4 + a) * 4 + b]; };
        // first kind: [c; ab] = (d_a g_bc + d_b g_ac - d_c g_ab)/2
        std::array<Expr, 64> first;
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = a; b < 4; ++b) {
                    Expr v = (D(a, b, c) + D(b, a, c) - D(c, a, b)) * Expr(Rational(1, 2));
                    first[(c * 4 + a) * 4 + b] = v;
                    first[(c * 4 + b) * 4 + a] = v;
                }
        TensorField t(x, {Valence::up, Valence::down, Valence::down});
        for (int d = 0; d < 4; ++d)
            for (int a = 0; a < 4; ++a)
                for (int b = a; b < 4; ++b) {
                    Expr v;
                    for (int c = 0; c < 4; ++c) {
                        const Expr& f = first[(c * 4 + a) * 4 + b];
                        if (!f.is_zero() && !gi(d, c).is_zero())
                            v += gi(d, c) * f;
                    }
                    t(d, a, b) = v;
                    t(d, b, a) = v;
                }
        gam_ = std::move(t);
    }
    return *gam_;
}

const TensorField& Curvature::riemann()
{
    if (!riem_) {
        const auto& G = christoffel();
        const Chart& x = g_.chart();
        // dG[c][a][d][b] = d_c Gamma^a_db
        std::vector<Expr> dG(256);
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int d = 0; d < 4; ++d)
                    for (int b = d; b < 4; ++b) {
                        Expr v = differentiate(G(a, d, b), x[c]);
                        dG[((c * 4 + a) * 4 + d) * 4 + b] = v;
                        dG[((c * 4 + a) * 4 + b) * 4 + d] = v;
                    }
        auto dGam = [&](int c, int a, int d, int b) -> const Expr& { return dG[((c * 4 + a) * 4 + d) * 4 + b]; };
        TensorField R(x, {Valence::up, Valence::down, Valence::down, Valence::down});
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = c + 1; d < 4; ++d) {
                        Expr v = dGam(c, a, d, b) - dGam(d, a, c, b);
                        for (int e = 0; e < 4; ++e) {
                            if (!G(a, c, e).is_zero() && !G(e, d, b).is_zero())
                                v += G(a, c, e) * G(e, d, b);
                            if (!G(a, d, e).is_zero() && !G(e, c, b).is_zero())
                                v -= G(a, d, e) * G(e, c, b);
                        }
                        R(a, b, c, d) = v;
                        R(a, b, d, c) = -v;
                    }
        riem_ = std::move(R);
    }
    return *riem_;
}

const TensorField& Curvature::riemann_lower()
{
    if (!riem_low_) {
        const auto& R = riemann();
        TensorField L(g_.chart(), {Valence::down, Valence::down, Valence::down, Valence::down});
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = c + 1; d < 4; ++d) {
                        Expr v;
                        for (int e = 0; e < 4; ++e)
                            if (!g_(a, e).is_zero() && !R(e, b, c, d).is_zero())
                                v += g_(a, e) * R(e, b, c, d);
                        L(a, b, c, d) = v;
                        L(a, b, d, c) = -v;
                    }
        riem_low_ = std::move(L);
    }
    return *riem_low_;
}

const TensorField& Curvature::ricci()
{
    if (!ric_) {
        const auto& R = riemann();
        TensorField r(g_.chart(), {Valence::down, Valence::down});
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d) {
                Expr v;
                for (int a = 0; a < 4; ++a)
                    v += R(a, b, a, d);
                r(b, d) = v;
            }
        ric_ = std::move(r);
    }
    return *ric_;
}

const Expr& Curvature::scalar()
{
    if (!scal_) {
        const auto& gi = inverse();
        const auto& r = ricci();
        Expr s;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                if (!gi(a, b).is_zero())
                    s += gi(a, b) * r(a, b);
        scal_ = s;
    }
    return *scal_;
}

const TensorField& Curvature::weyl()
{
    if (!weyl_) {
        const auto& R = riemann_lower();
        const auto& ric = ricci();
        Expr sixth = scalar() / Expr(6);
        Expr half(Rational(1, 2));
        TensorField C(g_.chart(), {Valence::down, Valence::down, Valence::down, Valence::down});
        const Metric& g = g_;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = c + 1; d < 4; ++d) {
                        Expr v = R(a, b, c, d) -
                                 half * (g(a, c) * ric(b, d) - g(a, d) * ric(b, c) - g(b, c) * ric(a, d) +
                                         g(b, d) * ric(a, c)) +
                                 sixth * (g(a, c) * g(b, d) - g(a, d) * g(b, c));
                        C(a, b, c, d) = v;
                        C(a, b, d, c) = -v;
                    }
        weyl_ = std::move(C);
    }
    return *weyl_;
}

TensorField Curvature::weyl_mixed()
{
    const auto& C = weyl();
    const auto& gi = inverse();
    TensorField M(g_.chart(), {Valence::up, Valence::down, Valence::down, Valence::down});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = c + 1; d < 4; ++d) {
                    Expr v;
                    for (int e = 0; e < 4; ++e)
                        if (!gi(a, e).is_zero() && !C(e, b, c, d).is_zero())
                            v += gi(a, e) * C(e, b, c, d);
                    M(a, b, c, d) = v;
                    M(a, b, d, c) = -v;
                }
    return M;
}

TensorField christoffels(const Metric& g) { return Curvature(g).christoffel(); }
TensorField riemann(const Metric& g) { return Curvature(g).riemann(); }
TensorField ricci(const Metric& g) { return Curvature(g).ricci(); }
Expr scalar_curvature(const Metric& g) { return Curvature(g).scalar(); }
TensorField weyl(const Metric& g) { return Curvature(g).weyl(); }

TensorField metric_compatibility(Curvature& cv)
{
    const Metric& g = cv.metric();
    const auto& G = cv.christoffel();
    TensorField t(g.chart(), {Valence::down, Valence::down, Valence::down});
    for (int c = 0; c < 4; ++c)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Expr v = differentiate(g(a, b), g.chart()[c]);
                for (int e = 0; e < 4; ++e) {
                    v -= G(e, c, a) * g(e, b);
                    v -= G(e, c, b) * g(a, e);
                }
                t(c, a, b) = v;
            }
    return t;
}

TensorField lie_derivative_metric(const Metric& g, const VectorField& k)
{
    const Chart& x = g.chart();
    std::array<Expr, 16> dk;  // dk[a*4+c] = d_a K^c
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            dk[a * 4 + c] = differentiate(k.c[c], x[a]);
    TensorField t(x, {Valence::down, Valence::down});
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            Expr v;
            for (int c = 0; c < 4; ++c) {
                if (!k.c[c].is_zero())
                    v += k.c[c] * differentiate(g(a, b), x[c]);
                v += g(c, b) * dk[a * 4 + c] + g(a, c) * dk[b * 4 + c];
            }
            t(a, b) = v;
            t(b, a) = v;
        }
    return t;
}

ThreeForm twist_three_form(const Metric& g, const VectorField& k)
{
    OneForm kk = lower(g, k);
    return wedge(kk, exterior_derivative(kk));
}

Metric conformal_rescale(const Metric& g, const Expr& omega)
{
    if (omega.is_zero())
        throw GeometryError("conformal factor is identically zero");
    std::array<std::array<Expr, 4>, 4> m;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            m[a][b] = omega * g(a, b);
    return Metric(g.chart(), m);
}

ZeroResult tensor_is_zero(const TensorField& t, const SamplingConfig& cfg, std::string* failing,
                          const std::string& name)
{
    std::vector<Expr> es;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.at_flat(i).is_zero())
            continue;
        es.push_back(t.at_flat(i));
        labels.push_back(t.label(i, name));
    }
    return all_zero(es, cfg, failing, &labels);
}

MetricJet::MetricJet(const Metric& g, int order) : g_(g), order_(order)
{
    const Chart& x = g.chart();
    if (order >= 1) {
        d1_.resize(64);
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = a; b < 4; ++b) {
                    Expr v = differentiate(g(a, b), x[c]);
                    d1_[(c * 4 + a) * 4 + b] = v;
                    d1_[(c * 4 + b) * 4 + a] = v;
                }
    }
    if (order >= 2) {
        d2_.resize(256);
        for (int c = 0; c < 4; ++c)
            for (int d = c; d < 4; ++d)
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b) {
                        Expr v = differentiate(d1_[(c * 4 + a) * 4 + b], x[d]);
                        for (auto [p, q] : {std::pair{c, d}, std::pair{d, c}})
                            for (auto [r, s] : {std::pair{a, b}, std::pair{b, a}})
                                d2_[((p * 4 + q) * 4 + r) * 4 + s] = v;
                    }
    }
    if (order >= 3) {
        d3_.resize(1024);
        for (int c = 0; c < 4; ++c)
            for (int d = c; d < 4; ++d)
                for (int e = d; e < 4; ++e)
                    for (int a = 0; a < 4; ++a)
                        for (int b = a; b < 4; ++b) {
                            Expr v = differentiate(d2_[((c * 4 + d) * 4 + a) * 4 + b], x[e]);
                            int idx[3] = {c, d, e};
                            std::sort(idx, idx + 3);
                            do {
                                for (auto [r, s] : {std::pair{a, b}, std::pair{b, a}})
                                    d3_[(((idx[0] * 4 + idx[1]) * 4 + idx[2]) * 4 + r) * 4 + s] = v;
                            } while (std::next_permutation(idx, idx + 3));
                        }
    }
    if (order >= 4) {
        d4_.resize(4096);
        for (int c = 0; c < 4; ++c)
            for (int d = c; d < 4; ++d)
                for (int e = d; e < 4; ++e)
                    for (int f = e; f < 4; ++f)
                        for (int a = 0; a < 4; ++a)
                            for (int b = a; b < 4; ++b) {
                                Expr v = differentiate(d3_[(((c * 4 + d) * 4 + e) * 4 + a) * 4 + b], x[f]);
                                int idx[4] = {c, d, e, f};
                                do {
                                    for (auto [r, s] : {std::pair{a, b}, std::pair{b, a}})
                                        d4_[((((idx[0] * 4 + idx[1]) * 4 + idx[2]) * 4 + idx[3]) * 4 + r) * 4 + s] =
                                            v;
                                } while (std::next_permutation(idx, idx + 4));
                            }
    }
}

}  // namespace nullasd
