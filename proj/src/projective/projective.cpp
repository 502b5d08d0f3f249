#include "nullasd/projective.hpp"

#include <cmath>

namespace nullasd {

Expr ProjectiveStructure::fibre_polynomial() const
{
    Expr l = sym(kFibre);
    return a[0] + l * (a[1] + l * (a[2] + l * a[3]));
}

ProjectiveStructure ode_from_connection(const Connection2D& c)
{
    ProjectiveStructure p;
    p.chart = c.chart();
    p.a[3] = c(0, 1, 1);
    p.a[2] = Expr(2) * c(0, 0, 1) - c(1, 1, 1);
    p.a[1] = c(0, 0, 0) - Expr(2) * c(1, 0, 1);
    p.a[0] = -c(1, 0, 0);
    return p;
}

Connection2D projective_equivalence_shift(const Connection2D& c, const std::array<Expr, 2>& a)
{
    Connection2D out = c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                Expr v = c(i, j, k);
                if (i == k)
                    v += a[j];
                if (i == j)
                    v += a[k];
                out(i, j, k) = v;
            }
    return out;
}

Spray spray(const ProjectiveStructure& p)
{
    return {p.chart, {Expr(1), sym(kFibre), p.fibre_polynomial()}};
}

ProjectiveStructure exchange_coordinates(const ProjectiveStructure& p)
{
    return {{p.chart[1], p.chart[0]}, {-p.a[3], -p.a[2], -p.a[1], -p.a[0]}};
}

FlatnessResult flatness_invariant(const ProjectiveStructure& p, const SamplingConfig& cfg)
{
    const std::string& x = p.chart[0];
    const std::string& y = p.chart[1];
    Expr l = sym(kFibre);
    Expr f = p.fibre_polynomial();
    auto total = [&](const Expr& e) {
        return differentiate(e, x) + l * differentiate(e, y) + f * differentiate(e, kFibre);
    };
    Expr f0 = differentiate(f, y);
    Expr f1 = differentiate(f, kFibre);
    Expr f00 = differentiate(f0, y);
    Expr f01 = differentiate(f0, kFibre);
    Expr f11 = differentiate(f1, kFibre);
    Expr df11 = total(f11);
    Expr inv = total(df11) - Expr(4) * total(f01) - f1 * df11 + Expr(4) * f1 * f01 - Expr(3) * f0 * f11 +
               Expr(6) * f00;
    return {inv, is_zero(inv, cfg)};
}

ProjectiveStructure derivative_of_first_order(const Expr& b, const Chart2& chart)
{
    return {chart, {differentiate(b, chart[0]), differentiate(b, chart[1]), Expr(), Expr()}};
}

GeodesicPath geodesic_integrate(const ProjectiveStructure& p, std::array<double, 3> init, double h, int n,
                                const Assignment& params)
{
    Expr f = p.fibre_polynomial();
    auto rhs = [&](const std::array<double, 3>& s) {
        Assignment at = params;
        at.set(p.chart[0], Number{s[0]});
        at.set(p.chart[1], Number{s[1]});
        at.set(kFibre, Number{s[2]});
        double v = evaluate(f, at).to_double();
        if (!std::isfinite(v))
            throw EvalError(EvalError::Kind::non_finite, "non-finite spray coefficient at " + at.str());
        return std::array<double, 3>{1.0, s[2], v};
    };
    auto step = [](const std::array<double, 3>& s, const std::array<double, 3>& k, double c) {
        return std::array<double, 3>{s[0] + c * k[0], s[1] + c * k[1], s[2] + c * k[2]};
    };
    GeodesicPath path;
    path.points.push_back(init);
    std::array<double, 3> s = init;
    try {
        for (int i = 0; i < n; ++i) {
            auto k1 = rhs(s);
            auto k2 = rhs(step(s, k1, h / 2));
            auto k3 = rhs(step(s, k2, h / 2));
            auto k4 = rhs(step(s, k3, h));
            for (int j = 0; j < 3; ++j)
                s[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
            path.points.push_back(s);
        }
    } catch (const EvalError& e) {
        path.complete = false;
        path.error = e.what();
    }
    return path;
}

}  // namespace nullasd
