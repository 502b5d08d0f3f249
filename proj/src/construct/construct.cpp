#include "nullasd/construct.hpp"

#include <cmath>

namespace nullasd {

namespace {

OneForm d(const Chart& c, int i) { return coordinate_form(c, i); }

Constraint make_constraint(std::string name, std::vector<Expr> residual, const SamplingConfig& cfg)
{
    ZeroResult v = all_zero(residual, cfg);
    return {std::move(name), std::move(residual), v};
}

// Attaches the checks every builder shares: the tetrad reproduces g, K is
// null and K is Killing.
BuiltGeometry assemble(std::string family, const NullTetrad& t, const VectorField& k, const SamplingConfig& cfg)
{
    BuiltGeometry b;
    b.family = std::move(family);
    b.tet = t;
    b.g = t.metric();
    b.k = k;
    auto tc = check_tetrad(b.g, t, cfg);
    b.constraints.push_back({"tetrad", {}, tc.reconstruction});
    b.constraints.push_back(make_constraint("null K", {inner(b.g, k, k)}, cfg));
    b.constraints.push_back(make_constraint("Killing", lie_derivative_metric(b.g, k).data(), cfg));
    return b;
}

Expr dx(const Expr& e) { return differentiate(e, "x"); }
Expr dy(const Expr& e) { return differentiate(e, "y"); }
Expr dz(const Expr& e) { return differentiate(e, "z"); }

void require_plane_chart(const ProjectiveStructure& p)
{
    if (p.chart[0] != "x" || p.chart[1] != "y")
        throw GeometryError("projective structure must use the chart (x, y)");
}

Expr fibre_cubic(const ProjectiveStructure& p, const Expr& z)
{
    return p.a[0] + z * (p.a[1] + z * (p.a[2] + z * p.a[3]));
}

std::vector<Expr> primed_weyl(const Metric& g, const NullTetrad& t, const SamplingConfig& cfg)
{
    auto w = weyl_spinors(g, t, cfg);
    return {w.primed.psi.begin(), w.primed.psi.end()};
}

}  // namespace

bool BuiltGeometry::constraints_hold() const
{
    for (const auto& c : constraints)
        if (!c.verdict.is_zero())
            return false;
    return true;
}

const Constraint* BuiltGeometry::constraint(const std::string& name) const
{
    for (const auto& c : constraints)
        if (c.name == name)
            return &c;
    return nullptr;
}

BuiltGeometry build_nontwisting(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& beta, const Expr& p,
                                const Expr& q, const SamplingConfig& cfg)
{
    const Chart& c = kNormalFormChart;
    Expr z = sym("z");
    Expr e = z * (-dy(beta) + a1 + beta * a2 + beta * beta * a3);
    Expr f = z * (a2 + Expr(2) * beta * a3) + p;
    NullTetrad t({d(c, 0) + (z * a3 - q) * d(c, 2), d(c, 3) - e * d(c, 1) - f * d(c, 2), d(c, 1),
                  d(c, 2) - beta * d(c, 1)});
    auto b = assemble("nontwisting", t, coordinate_vector(c, 0), cfg);
    ProjectiveStructure proj;
    proj.a = {dx(beta) + beta * dy(beta) - beta * a1 - beta * beta * a2 - beta * beta * beta * a3, a1, a2, a3};
    b.proj = proj;
    return b;
}

BuiltGeometry build_beta_zero(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& p, const Expr& q,
                              const SamplingConfig& cfg)
{
    auto b = build_nontwisting(a1, a2, a3, Expr(), p, q, cfg);
    b.family = "beta-zero";
    return b;
}

Expr g_residual(const ProjectiveStructure& proj, const Expr& g)
{
    require_plane_chart(proj);
    Expr z = sym("z");
    Expr gzz = dz(dz(g));
    return dx(gzz) + z * dy(gzz) + fibre_cubic(proj, z) * dz(gzz);
}

BuiltGeometry build_twisting(const ProjectiveStructure& proj, const Expr& g, const SamplingConfig& cfg)
{
    require_plane_chart(proj);
    const Chart& c = kNormalFormChart;
    Expr z = sym("z");
    Expr gz = dz(g), gzz = dz(gz);
    if (gzz.is_zero())
        throw GeometryError("G_zz vanishes identically; the metric is degenerate");
    const auto& a = proj.a;
    Expr xcoef = a[2] * gz + Expr(2) * a[3] * (z * gz - g) - dy(gz);
    NullTetrad t({d(c, 0) + a[3] * gz * d(c, 2) + xcoef * d(c, 1), d(c, 3) - fibre_cubic(proj, z) * d(c, 1),
                  gzz * d(c, 1), d(c, 2) - z * d(c, 1)});
    auto b = assemble("twisting", t, coordinate_vector(c, 0), cfg);
    b.proj = proj;
    b.constraints.push_back(make_constraint("G equation", {g_residual(proj, g)}, cfg));
    return b;
}

BuiltGeometry build_fefferman_like(const FeffermanData& fd, const SamplingConfig& cfg)
{
    require_plane_chart(fd.proj);
    const Chart& c = kNormalFormChart;
    Expr z = sym("z");
    const auto& a = fd.proj.a;
    Expr zg = z + fd.gamma;
    Expr ycoef = zg * a[3] + fd.sigma;
    Expr xcoef = zg * a[2] + Expr(2) * a[3] * (z * z / Expr(2) - fd.delta) - dy(fd.gamma) + fd.rho;
    NullTetrad t({d(c, 0) + ycoef * d(c, 2) + xcoef * d(c, 1), d(c, 3) - fibre_cubic(fd.proj, z) * d(c, 1), d(c, 1),
                  d(c, 2) - z * d(c, 1)});
    auto b = assemble("fefferman-like", t, coordinate_vector(c, 0), cfg);
    b.proj = fd.proj;
    return b;
}

std::pair<Expr, Expr> fefferman_type_n_gauge(const FeffermanData& fd)
{
    const auto& a = fd.proj.a;
    Expr sigma = a[2] / Expr(3) - fd.gamma * a[3];
    Expr rho = Expr(2) * a[1] / Expr(3) - fd.gamma * a[2] + Expr(2) * a[3] * fd.delta + dy(fd.gamma);
    return {rho, sigma};
}

FeffermanCheck fefferman_type_n_check(const FeffermanData& fd, const SamplingConfig& cfg)
{
    const auto& a = fd.proj.a;
    FeffermanCheck out;
    out.conditions = {fd.gamma * a[3] + fd.sigma - a[2] / Expr(3),
                      fd.gamma * a[2] - Expr(2) * a[3] * fd.delta - dy(fd.gamma) + fd.rho - Expr(2) * a[1] / Expr(3)};
    out.verdict = all_zero({out.conditions[0], out.conditions[1]}, cfg);
    out.curl = dx(out.conditions[0]) - dy(out.conditions[1]);
    out.curl_verdict = is_zero(out.curl, cfg);
    auto b = build_fefferman_like(fd, cfg);
    FrameGeometry fg(b.tet);
    auto w = weyl_spinors(fg);
    auto guards = b.g.components();
    guards.push_back(b.g.det());
    bool any_iii = false, other = false;
    for (const auto& s : petrov_at_samples(w.unprimed, guards, cfg)) {
        out.types.push_back(s.petrov.type);
        any_iii = any_iii || s.petrov.type == PetrovType::III;
        other = other || (s.petrov.type != PetrovType::III && s.petrov.type != PetrovType::N &&
                          s.petrov.type != PetrovType::O);
    }
    out.consistent = !other && (out.curl_verdict.is_zero() != any_iii);
    return out;
}

BuiltGeometry build_ppwave(const Expr& q, const SamplingConfig& cfg)
{
    const Chart& c = kHeavenlyChart;
    NullTetrad t({d(c, 0) - q * d(c, 2), d(c, 3), d(c, 1), d(c, 2)});
    auto b = assemble("pp-wave", t, coordinate_vector(c, 0), cfg);
    b.constraints.push_back(make_constraint("Ricci", ricci(b.g).data(), cfg));
    return b;
}

BuiltGeometry build_sparling_tod(const Expr& h, const SamplingConfig& cfg)
{
    const Chart& c = kHeavenlyChart;
    Expr T = sym("T"), X = sym("X"), Y = sym("Y"), Z = sym("Z");
    Expr w = Y * T - Z * X;
    Expr hw = substitute(h, {{"u", Y / w}, {"v", Z / w}}) / (w * w * w);
    // theta^00' theta^11' - theta^01' theta^10' = dY dT - dZ dX - hw (Y dZ - Z dY)^2
    NullTetrad t({d(c, 0) - hw * Z * Z * d(c, 2) + hw * Y * Z * d(c, 3), d(c, 3),
                  d(c, 1) + hw * Y * Y * d(c, 3) - hw * Y * Z * d(c, 2), d(c, 2)});
    VectorField k{c, {Z, Y, Expr(), Expr()}};
    auto b = assemble("sparling-tod", t, k, cfg);
    b.constraints.push_back(make_constraint("Ricci", ricci(b.g).data(), cfg));
    b.constraints.push_back(make_constraint("ASD", primed_weyl(b.g, t, cfg), cfg));
    return b;
}

Assignment sparling_tod_transform(const Assignment& pt)
{
    double T = pt.at("T").to_double(), X = pt.at("X").to_double();
    double Y = pt.at("Y").to_double(), Z = pt.at("Z").to_double();
    double w = Y * T - X * Z;
    if (w == 0)
        throw GeometryError("YT - ZX vanishes at the point");
    if (Y * Z <= 0)
        throw GeometryError("YZ must be positive");
    double r = std::sqrt(Y * Z);
    Assignment out;
    out.set("t", Number{-(X / Y + T / Z) / 2});
    out.set("x", Number{w / r});
    out.set("y", Number{std::log(Z / Y)});
    out.set("z", Number{1 / r});
    return out;
}

Expr sparling_tod_a3(const Expr& h)
{
    Expr x = sym("x"), y = sym("y");
    Expr half_y = y / Expr(2);
    return -x / Expr(4) - substitute(h, {{"u", exp(-half_y) / x}, {"v", exp(half_y) / x}}) / (x * x * x);
}

HeavenlyGeometry build_heavenly(const Expr& theta, const SamplingConfig& cfg)
{
    const Chart& c = kHeavenlyChart;
    auto dv = [&](const Expr& e, int i) { return differentiate(e, c[i]); };
    Expr tt = dv(dv(theta, 0), 0), tx = dv(dv(theta, 0), 1), xx = dv(dv(theta, 1), 1);
    NullTetrad t({d(c, 0) - xx * d(c, 2) - tx * d(c, 3), d(c, 3), d(c, 1) + tt * d(c, 3) + tx * d(c, 2), d(c, 2)});
    HeavenlyGeometry out;
    out.geometry = assemble("heavenly", t, coordinate_vector(c, 0), cfg);
    // Only the tetrad checks apply; d/dT need not be Killing for general Theta.
    out.geometry.constraints.pop_back();
    out.geometry.constraints.pop_back();
    out.data.theta = theta;
    out.data.residual = dv(dv(theta, 2), 0) - dv(dv(theta, 3), 1) + tt * xx - tx * tx;
    out.data.verdict = is_zero(out.data.residual, cfg);
    out.geometry.constraints.push_back({"heavenly", {out.data.residual}, out.data.verdict});
    return out;
}

std::array<std::array<Expr, 16>, 3> heavenly_two_forms(const NullTetrad& t)
{
    auto wedge2 = [&](int a, int b) {
        std::array<Expr, 16> f{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                f[i * 4 + j] = t.theta(a).c[i] * t.theta(b).c[j] - t.theta(a).c[j] * t.theta(b).c[i];
        return f;
    };
    auto s00 = wedge2(0, 2);
    auto s11 = wedge2(1, 3);
    auto m = wedge2(0, 3), n = wedge2(1, 2);
    std::array<Expr, 16> s01{};
    for (int i = 0; i < 16; ++i)
        s01[i] = (m[i] + n[i]) / Expr(2);
    return {s00, s01, s11};
}

std::array<Expr, 16> sigma_pulled_back(const std::array<std::array<Expr, 16>, 3>& sigma, const Expr& pi0,
                                       const Expr& pi1)
{
    std::array<Expr, 16> out{};
    for (int i = 0; i < 16; ++i)
        out[i] = pi0 * pi0 * sigma[0][i] + Expr(2) * pi0 * pi1 * sigma[1][i] + pi1 * pi1 * sigma[2][i];
    return out;
}

std::vector<NamedVerdict> endomorphism_check(const Metric& g, const std::array<std::array<Expr, 16>, 3>& sigma,
                                             const SamplingConfig& cfg)
{
    auto gi = inverse4(g.matrix());
    using M = std::array<Expr, 16>;
    auto endo = [&](const M& f) {
        M e{};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Expr v;
                for (int c = 0; c < 4; ++c)
                    if (!gi[a * 4 + c].is_zero() && !f[c * 4 + b].is_zero())
                        v += gi[a * 4 + c] * f[c * 4 + b];
                e[a * 4 + b] = v;
            }
        return e;
    };
    auto mul = [](const M& p, const M& q) {
        M r{};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                Expr v;
                for (int c = 0; c < 4; ++c)
                    if (!p[a * 4 + c].is_zero() && !q[c * 4 + b].is_zero())
                        v += p[a * 4 + c] * q[c * 4 + b];
                r[a * 4 + b] = v;
            }
        return r;
    };
    auto minus_id = [](const M& p, int sign) {
        std::vector<Expr> out;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                out.push_back(p[a * 4 + b] - Expr(a == b ? sign : 0));
        return out;
    };
    M r{}, i{}, s{};
    for (int k = 0; k < 16; ++k) {
        r[k] = sigma[0][k] - sigma[2][k];
        i[k] = sigma[0][k] + sigma[2][k];
        s[k] = Expr(2) * sigma[1][k];
    }
    M er = endo(r), ei = endo(i), es = endo(s);
    return {{"-I^2=Id", all_zero(minus_id(mul(ei, ei), -1), cfg)},
            {"R^2=Id", all_zero(minus_id(mul(er, er), 1), cfg)},
            {"S^2=Id", all_zero(minus_id(mul(es, es), 1), cfg)},
            {"IRS=Id", all_zero(minus_id(mul(mul(ei, er), es), 1), cfg)}};
}

}  // namespace nullasd
