#include "nullasd/spinor.hpp"

#include <cmath>

namespace nullasd {

namespace {

std::array<Expr, 16> form_matrix(const std::array<OneForm, 4>& th)
{
    std::array<Expr, 16> m;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            m[a * 4 + mu] = th[a].c[mu];
    return m;
}

}  // namespace

NullTetrad::NullTetrad(std::array<OneForm, 4> theta, int sigma) : sigma_(sigma)
{
    if (sigma != 1 && sigma != -1)
        throw GeometryError("orientation sign must be +1 or -1");
    validate_chart(theta[0].chart);
    for (auto& f : theta)
        if (f.chart != theta[0].chart)
            throw GeometryError("tetrad forms live on different charts");
    if (sigma < 0)
        std::swap(theta[1], theta[2]);
    theta_ = std::move(theta);
    auto inv = inverse4(form_matrix(theta_));
    for (int a = 0; a < 4; ++a) {
        e_[a].chart = chart();
        for (int mu = 0; mu < 4; ++mu)
            e_[a].c[mu] = inv[mu * 4 + a];
    }
}

Metric NullTetrad::metric() const
{
    std::array<std::array<Expr, 4>, 4> m{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            Expr v;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (int s = frame_metric(a, b))
                        v += Expr(s) * theta_[a].c[mu] * theta_[b].c[nu];
            m[mu][nu] = v;
        }
    return Metric(chart(), m);
}

Expr NullTetrad::volume() const { return determinant4(form_matrix(theta_)); }

std::array<Expr, 4> NullTetrad::components(const VectorField& v) const
{
    std::array<Expr, 4> r;
    for (int a = 0; a < 4; ++a)
        r[a] = theta_[a](v);
    return r;
}

NullTetrad oriented_tetrad(std::array<OneForm, 4> theta, const SamplingConfig& cfg)
{
    NullTetrad t(theta, 1);
    Expr vol = t.volume();
    if (auto c = vol.constant_value())
        return *c > 0 ? t : NullTetrad(theta, -1);
    Sampler s(cfg.seed);
    auto names = vol.free_symbols();
    for (int i = 0; i < 10 * cfg.count; ++i) {
        Assignment pt = s.point(names);
        if (!point_is_regular({vol}, pt))
            continue;
        double v = evaluate(vol, pt).to_double();
        if (std::fabs(v) < 1e-12)
            continue;
        return v > 0 ? t : NullTetrad(theta, -1);
    }
    throw GeometryError("tetrad volume vanishes at every sample point");
}

TetradCheck check_tetrad(const Metric& g, const NullTetrad& t, const SamplingConfig& cfg)
{
    TetradCheck out;
    Metric h = t.metric();
    std::vector<Expr> rec;
    std::vector<std::string> labels;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            rec.push_back(h(a, b) - g(a, b));
            labels.push_back("g[" + std::to_string(a) + "," + std::to_string(b) + "]");
        }
    out.reconstruction = all_zero(rec, cfg, &out.failing, &labels);
    std::vector<Expr> dual;
    std::vector<std::string> dl;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            dual.push_back(t.theta(a)(t.e(b)) - Expr(a == b ? 1 : 0));
            dl.push_back("theta" + std::to_string(a) + "(e" + std::to_string(b) + ")");
        }
    std::string f2;
    out.duality = all_zero(dual, cfg, &f2, &dl);
    if (out.failing.empty())
        out.failing = f2;
    return out;
}

FrameGeometry::FrameGeometry(NullTetrad t) : t_(std::move(t))
{
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            VectorField br = lie_bracket(t_.e(a), t_.e(b));
            for (int c = 0; c < 4; ++c) {
                Expr v = t_.theta(c)(br);
                comm_[(a * 4 + b) * 4 + c] = v;
                comm_[(b * 4 + a) * 4 + c] = -v;
            }
        }
    // Koszul formula with constant frame metric:
    // omega_abc = g(nabla_a e_b, e_c) = (C_abc - C_bca + C_cab) / 2, C_abc = g([e_a,e_b], e_c).
    auto clow = [&](int a, int b, int c) {
        Expr v;
        for (int d = 0; d < 4; ++d)
            if (int s = frame_metric(d, c))
                v += Expr(s) * structure(a, b, d);
        return v;
    };
    std::array<Expr, 64> cl;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                cl[(a * 4 + b) * 4 + c] = clow(a, b, c);
    Expr half(Rational(1, 2));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                Expr v;
                for (int d = 0; d < 4; ++d) {
                    int s = frame_metric(d, c);  // eta^dc has the same entries
                    if (!s)
                        continue;
                    Expr w = cl[(a * 4 + b) * 4 + d] - cl[(b * 4 + d) * 4 + a] + cl[(d * 4 + a) * 4 + b];
                    v += Expr(s) * w;
                }
                om_[(a * 4 + b) * 4 + c] = half * v;
            }
    for (int d = 0; d < 4; ++d)
        for (int C = 0; C < 2; ++C)
            for (int E = 0; E < 2; ++E) {
                Expr u, p;
                for (int X = 0; X < 2; ++X) {
                    u += omega(d, frame_index(C, X), frame_index(E, X));
                    p += omega(d, frame_index(X, C), frame_index(X, E));
                }
                gu_[(d * 2 + C) * 2 + E] = half * u;
                gp_[(d * 2 + C) * 2 + E] = half * p;
            }
}

const std::vector<Expr>& FrameGeometry::riemann()
{
    if (riem_)
        return *riem_;
    // Rup(d, c, a, b): R(e_a, e_b) e_c = Rup(d,c,a,b) e_d.
    std::vector<Expr> up(256);
    auto U = [&](int d, int c, int a, int b) -> Expr& { return up[((d * 4 + c) * 4 + a) * 4 + b]; };
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Expr v = apply(a, omega(b, c, d)) - apply(b, omega(a, c, d));
                    for (int e = 0; e < 4; ++e) {
                        if (!omega(b, c, e).is_zero() && !omega(a, e, d).is_zero())
                            v += omega(b, c, e) * omega(a, e, d);
                        if (!omega(a, c, e).is_zero() && !omega(b, e, d).is_zero())
                            v -= omega(a, c, e) * omega(b, e, d);
                        if (!structure(a, b, e).is_zero() && !omega(e, c, d).is_zero())
                            v -= structure(a, b, e) * omega(e, c, d);
                    }
                    U(d, c, a, b) = v;
                    U(d, c, b, a) = -v;
                }
    std::vector<Expr> low(256);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Expr v;
                    for (int e = 0; e < 4; ++e)
                        if (int s = frame_metric(a, e))
                            v += Expr(s) * U(e, b, c, d);
                    low[((a * 4 + b) * 4 + c) * 4 + d] = v;
                }
    riem_ = std::move(low);
    return *riem_;
}

}  // namespace nullasd
