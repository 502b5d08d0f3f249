#include "nullasd/construct.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nullasd;

namespace {

const Expr t = sym("t");
const Expr x = sym("x");
const Expr y = sym("y");
const Expr z = sym("z");

Expr random_poly(std::mt19937& rng, int degree)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    Expr out;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j)
            out += Expr(coef(rng)) * pow(x, i) * pow(y, j);
    return out;
}

ProjectiveStructure proj(Expr a0, Expr a1, Expr a2, Expr a3) { return {{"x", "y"}, {a0, a1, a2, a3}}; }

ZeroResult primed_zero(const BuiltGeometry& b)
{
    FrameGeometry fg(b.tet);
    auto w = weyl_spinors(fg);
    return all_zero({w.primed.psi.begin(), w.primed.psi.end()});
}

std::vector<PetrovType> types(const BuiltGeometry& b, int count = 10)
{
    FrameGeometry fg(b.tet);
    auto w = weyl_spinors(fg);
    auto guards = b.g.components();
    guards.push_back(b.g.det());
    SamplingConfig cfg;
    cfg.count = count;
    std::vector<PetrovType> out;
    for (const auto& s : petrov_at_samples(w.unprimed, guards, cfg))
        out.push_back(s.petrov.type);
    return out;
}

void expect_types(const BuiltGeometry& b, PetrovType want, const std::string& what)
{
    auto ts = types(b);
    EXPECT_EQ(ts.size(), 10u) << what;
    for (auto ty : ts)
        EXPECT_EQ(ty, want) << what << ": got " << petrov_name(ty);
}

bool all_components_zero(const Metric& a, const Metric& b)
{
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (!(a(i, j) - b(i, j)).is_zero())
                return false;
    return true;
}

}  // namespace

TEST(Construct, NontwistingFlat)
{
    auto b = build_nontwisting(Expr(), Expr(), Expr(), Expr(), Expr(), Expr());
    EXPECT_TRUE(b.constraints_hold());
    // dt dy - dz dx
    EXPECT_TRUE((b.g(0, 2) - Expr(1)).is_zero());
    EXPECT_TRUE((b.g(1, 3) + Expr(1)).is_zero());
    for (int i = 0; i < 4; ++i)
        EXPECT_TRUE(b.g(i, i).is_zero());
    EXPECT_TRUE(tensor_is_zero(riemann(b.g)).is_zero());
    ASSERT_TRUE(b.proj.has_value());
    for (const auto& a : b.proj->a)
        EXPECT_TRUE(a.is_zero());
}

TEST(Construct, NontwistingMatchesDisplayedForm)
{
    // Expand the displayed product form independently and compare.
    Expr a1 = x * y, a2 = y - x, a3 = x * x, beta = x + y * y, p = y, q = x * y * y;
    auto b = build_nontwisting(a1, a2, a3, beta, p, q);
    const Chart& c = kNormalFormChart;
    auto dc = [&](int i) { return coordinate_form(c, i); };
    Expr by = differentiate(beta, "y");
    OneForm f1 = dc(0) + (z * a3 - q) * dc(2);
    OneForm f2 = dc(2) - beta * dc(1);
    OneForm f3 = dc(3) - z * (-by + a1 + beta * a2 + beta * beta * a3) * dc(1) -
                 (z * (a2 + Expr(2) * beta * a3) + p) * dc(2);
    Metric ref = metric_from_products(c, {{Expr(1), f1, f2}, {Expr(-1), f3, dc(1)}});
    EXPECT_TRUE(all_components_zero(b.g, ref));
    EXPECT_TRUE((b.proj->a[0] - (differentiate(beta, "x") + beta * by - beta * a1 - beta * beta * a2 -
                                 beta * beta * beta * a3))
                    .is_zero());
    EXPECT_TRUE(b.constraints_hold());
    for (int i = 0; i < 4; ++i)
        EXPECT_TRUE(twist_three_form(b.g, b.k).c[i].is_zero());
}

TEST(Construct, NontwistingIsAntiSelfDual)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        auto b = build_nontwisting(random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2),
                                   random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2));
        EXPECT_TRUE(b.constraints_hold());
        EXPECT_TRUE(primed_zero(b).is_zero()) << "trial " << trial;
        auto tw = twist_three_form(b.g, b.k);
        for (const auto& e : tw.c)
            EXPECT_TRUE(e.is_zero());
    }
}

TEST(Construct, GResidual)
{
    Expr g2 = z * z / Expr(2);
    EXPECT_EQ(is_zero(g_residual(proj(x, y, x * y, Expr(3)), g2)).verdict, Verdict::proven_zero);
    Expr ge = exp(z * x - y) / (x * x);
    auto r = is_zero(g_residual(proj(Expr(), Expr(), Expr(), Expr()), ge));
    EXPECT_TRUE(r.is_zero());
    // G = z^4 with A = 0 is a solution: G_zz = 12 z^2 is constant along d_x + z d_y.
    EXPECT_EQ(is_zero(g_residual(proj(Expr(), Expr(), Expr(), Expr()), pow(z, 4))).verdict, Verdict::proven_zero);
    // It stops being one once A0 is switched on: residual 24 z A0.
    auto r4 = g_residual(proj(Expr(1), Expr(), Expr(), Expr()), pow(z, 4));
    EXPECT_TRUE((r4 - Expr(24) * z).is_zero());
    EXPECT_EQ(is_zero(g_residual(proj(Expr(), Expr(), Expr(), Expr()), x * pow(z, 3))).verdict, Verdict::nonzero);
}

TEST(Construct, TwistingBasics)
{
    EXPECT_THROW(build_twisting(proj(Expr(), Expr(), Expr(), Expr()), z * x), GeometryError);

    // A = 0, G = z^2/2: dt (dy - z dx) - dx dz
    auto b = build_twisting(proj(Expr(), Expr(), Expr(), Expr()), z * z / Expr(2));
    EXPECT_TRUE(b.constraints_hold());
    const Chart& c = kNormalFormChart;
    auto dc = [&](int i) { return coordinate_form(c, i); };
    Metric ref = metric_from_products(c, {{Expr(1), dc(0), dc(2) - z * dc(1)}, {Expr(-1), dc(1), dc(3)}});
    EXPECT_TRUE(all_components_zero(b.g, ref));
    auto tw = twist_three_form(b.g, b.k);
    bool nonzero = false;
    for (const auto& e : tw.c)
        nonzero |= !e.is_zero();
    EXPECT_TRUE(nonzero);

    // e^t g has vanishing Weyl tensor.
    auto resc = conformal_rescale(b.g, exp(t));
    EXPECT_TRUE(tensor_is_zero(weyl(resc)).is_zero());
    EXPECT_TRUE(tensor_is_zero(weyl(b.g)).is_zero());
}

TEST(Construct, TwistingIsAntiSelfDual)
{
    std::mt19937 rng(5);
    // Fefferman-type data: G_zz = 1 solves the G equation for every A.
    for (int trial = 0; trial < 3; ++trial) {
        auto p = proj(random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2));
        Expr g = z * z / Expr(2) + z * random_poly(rng, 2) + random_poly(rng, 2);
        auto b = build_twisting(p, g);
        EXPECT_TRUE(b.constraints_hold());
        EXPECT_TRUE(primed_zero(b).is_zero()) << "trial " << trial;
    }
    // Flat projective data with G_zz a function of zx - y.
    Expr u = z * x - y;
    for (const Expr& g : {pow(u, 4) / (Expr(12) * x * x), exp(u) / (x * x) + z * x * pow(y, 3)}) {
        auto b = build_twisting(proj(Expr(), Expr(), Expr(), Expr()), g);
        EXPECT_TRUE(b.constraints_hold());
        EXPECT_TRUE(primed_zero(b).is_zero()) << g.str();
    }
}

TEST(Construct, TwistingViolatingGEquationIsNotAntiSelfDual)
{
    auto b = build_twisting(proj(Expr(), Expr(), Expr(), Expr()), x * pow(z, 3));
    const Constraint* c = b.constraint("G equation");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->verdict.verdict, Verdict::nonzero);
    EXPECT_FALSE(b.constraints_hold());
    EXPECT_EQ(primed_zero(b).verdict, Verdict::nonzero);
}

TEST(Construct, ScalarInvariantsOfExponentialExample)
{
    Expr bfun = x * pow(y, 3);
    Expr u = z * x - y;
    auto b = build_twisting(proj(Expr(), Expr(), Expr(), Expr()), exp(u) / (x * x) + z * bfun);
    FrameGeometry fg(b.tet);
    auto w = weyl_spinors(fg);
    auto inv = scalar_invariants(w.unprimed);
    auto d = [](const Expr& e, const char* v) { return differentiate(e, v); };
    Expr byy = d(d(bfun, "y"), "y");
    Expr i_ref = Expr(Rational(-3, 2)) * x * byy * exp(Expr(-3) * u);
    Expr j_ref = Expr(Rational(3, 8)) * x * (x * d(byy, "x") + Expr(3) * byy + x * z * d(byy, "y")) *
                 exp(Expr(-4) * u);
    SamplingConfig cfg;
    cfg.count = 20;
    EXPECT_TRUE(is_zero(inv.I - i_ref, cfg).is_zero()) << inv.I.str();
    EXPECT_TRUE(is_zero(inv.J - j_ref, cfg).is_zero()) << inv.J.str();
}

TEST(Construct, FeffermanTypeConditions)
{
    std::mt19937 rng(17);
    SamplingConfig cfg;
    cfg.count = 10;
    for (int trial = 0; trial < 2; ++trial) {
        FeffermanData fd;
        fd.proj = proj(random_poly(rng, 1), random_poly(rng, 1), random_poly(rng, 1), random_poly(rng, 1));
        fd.gamma = random_poly(rng, 1);
        fd.delta = random_poly(rng, 1);
        auto [rho, sigma] = fefferman_type_n_gauge(fd);
        fd.rho = rho;
        fd.sigma = sigma;
        auto ok = fefferman_type_n_check(fd, cfg);
        EXPECT_TRUE(ok.verdict.is_zero());
        EXPECT_TRUE(ok.consistent);
        for (auto ty : ok.types)
            EXPECT_TRUE(ty == PetrovType::N || ty == PetrovType::O) << petrov_name(ty);

        // A constant shift of sigma is the gauge t -> t + y: still type N.
        FeffermanData shifted = fd;
        shifted.sigma = fd.sigma + Expr(1);
        auto gauge = fefferman_type_n_check(shifted, cfg);
        EXPECT_EQ(gauge.verdict.verdict, Verdict::nonzero);
        EXPECT_TRUE(gauge.curl_verdict.is_zero());
        EXPECT_TRUE(gauge.consistent);
        for (auto ty : gauge.types)
            EXPECT_EQ(ty, PetrovType::N);

        shifted.sigma = fd.sigma + x;
        auto bad = fefferman_type_n_check(shifted, cfg);
        EXPECT_EQ(bad.verdict.verdict, Verdict::nonzero);
        EXPECT_EQ(bad.curl_verdict.verdict, Verdict::nonzero);
        EXPECT_TRUE(bad.consistent);
        for (auto ty : bad.types)
            EXPECT_EQ(ty, PetrovType::III);
    }
    FeffermanData zero;
    zero.proj = proj(Expr(), Expr(), Expr(), Expr());
    auto b = build_fefferman_like(zero);
    expect_types(b, PetrovType::O, "zero data");
    auto zc = fefferman_type_n_check(zero, cfg);
    EXPECT_TRUE(zc.verdict.is_zero());
}

TEST(Construct, FeffermanWeylIsCurlOfConditions)
{
    std::mt19937 rng(29);
    for (int trial = 0; trial < 3; ++trial) {
        FeffermanData fd;
        fd.proj = proj(random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2), random_poly(rng, 2));
        fd.gamma = random_poly(rng, 2);
        fd.delta = random_poly(rng, 2);
        fd.rho = random_poly(rng, 2);
        fd.sigma = random_poly(rng, 2);
        FrameGeometry fg(build_fefferman_like(fd).tet);
        auto w = weyl_spinors(fg);
        auto chk = fefferman_type_n_check(fd);
        for (int k = 0; k < 3; ++k)
            EXPECT_TRUE(w.unprimed.psi[k].is_zero());
        EXPECT_TRUE((w.unprimed.psi[3] + Expr(Rational(3, 4)) * chk.curl).is_zero());
    }
}

TEST(Construct, FeffermanIsTwistingWithQuadraticG)
{
    FeffermanData fd;
    fd.proj = proj(x, y * y, x - y, Expr(2));
    fd.gamma = x * y;
    fd.delta = y;
    auto f = build_fefferman_like(fd);
    auto tw = build_twisting(fd.proj, z * z / Expr(2) + z * fd.gamma + fd.delta);
    EXPECT_TRUE(all_components_zero(f.g, tw.g));
}

TEST(Construct, BetaZeroTypes)
{
    // A1 = 0: type III when (A2)_x != 0.
    expect_types(build_beta_zero(Expr(), x, Expr()), PetrovType::III, "A2 = x");
    expect_types(build_beta_zero(Expr(), x * x, Expr()), PetrovType::III, "A2 = x^2");
    // With P = Q = A3 = 0 a member with (A2)_x = 0 is conformally flat; Q
    // with Q_xx != 0 makes it type N.
    expect_types(build_beta_zero(Expr(), y, Expr(), Expr(), x * x), PetrovType::N, "A2 = y, Q = x^2");
    expect_types(build_beta_zero(Expr(), x, Expr(), Expr(), x * x), PetrovType::III, "A2 = x, Q = x^2");
    expect_types(build_beta_zero(Expr(), y * y, Expr(), x), PetrovType::O, "A2 = y^2, P = x");
}

TEST(Construct, BetaZeroWithLinearA2IsConformallyFlat)
{
    // y'' = y y'^2 is projectively flat, and with P = Q = A1 = A3 = 0 the
    // whole Weyl tensor vanishes.
    auto b = build_beta_zero(Expr(), y, Expr());
    EXPECT_TRUE(tensor_is_zero(weyl(b.g)).is_zero());
    EXPECT_TRUE(flatness_invariant(*b.proj).result.is_zero());
}

TEST(Construct, NontwistingFlatProjectiveBranch)
{
    expect_types(build_nontwisting(Expr(), Expr(), Expr(), y * y, Expr(), Expr()), PetrovType::III, "beta = y^2");
    expect_types(build_nontwisting(Expr(), Expr(), Expr(), y, Expr(), Expr()), PetrovType::O, "beta = y");
    expect_types(build_nontwisting(Expr(), Expr(), Expr(), y, Expr(), x * x), PetrovType::N, "beta = y, Q = x^2");
    expect_types(build_nontwisting(Expr(), Expr(), Expr(), y * y, Expr(), x * x), PetrovType::III,
                 "beta = y^2, Q = x^2");
}

TEST(Construct, PpWave)
{
    auto flat = build_ppwave(Expr());
    EXPECT_TRUE(tensor_is_zero(riemann(flat.g)).is_zero());
    Expr X = sym("X"), Y = sym("Y");
    SamplingConfig cfg;
    cfg.count = 30;
    auto b = build_ppwave(X * X + pow(Y, 3), cfg);
    EXPECT_TRUE(b.constraints_hold());
    EXPECT_TRUE(primed_zero(b).is_zero());
    expect_types(build_ppwave(X * X), PetrovType::N, "Q = X^2");
    // special case of the beta = 0 form: rename (T, X, Y, Z) -> (t, x, y, z), Q -> -Q
    auto bz = build_beta_zero(Expr(), Expr(), Expr(), Expr(), x * x + pow(y, 3));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            EXPECT_TRUE((substitute(b.g(i, j), {{"X", x}, {"Y", y}}) - bz.g(i, j)).is_zero());
}

TEST(Construct, SparlingTod)
{
    auto flat = build_sparling_tod(Expr());
    EXPECT_TRUE(tensor_is_zero(riemann(flat.g)).is_zero());
    SamplingConfig cfg;
    cfg.count = 30;
    for (const Expr& h : {sym("u"), sym("u") * sym("v")}) {
        auto b = build_sparling_tod(h, cfg);
        EXPECT_TRUE(b.constraints_hold()) << h.str();
        for (const auto& c : b.constraints)
            EXPECT_TRUE(c.verdict.is_zero()) << c.name;
    }
}

TEST(Construct, SparlingTodTransform)
{
    Expr h = sym("u") * sym("v") + sym("u");
    auto b = build_sparling_tod(h);
    Expr a3 = sparling_tod_a3(h);
    // z^2 g in (t, x, y, z): dy dt - dz dx + z A3 dy^2
    auto target = [&](const Assignment& p) {
        Assignment xy;
        xy.set("x", p.at("x"));
        xy.set("y", p.at("y"));
        double zz = p.at("z").to_double();
        double a = evaluate(a3, xy).to_double();
        std::array<std::array<double, 4>, 4> m{};
        m[0][2] = m[2][0] = 1;
        m[1][3] = m[3][1] = -1;
        m[2][2] = 2 * zz * a;
        for (auto& row : m)
            for (auto& v : row)
                v /= zz * zz;
        return m;
    };
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    const char* names[4] = {"T", "X", "Y", "Z"};
    const char* small[4] = {"t", "x", "y", "z"};
    int checked = 0;
    while (checked < 10) {
        double pt[4] = {u(rng), u(rng), u(rng), u(rng)};
        if (std::abs(pt[2] * pt[0] - pt[3] * pt[1]) < 0.2)
            continue;
        auto assign = [&](const double* v) {
            Assignment a;
            for (int i = 0; i < 4; ++i)
                a.set(names[i], Number{v[i]});
            return a;
        };
        Assignment p = assign(pt);
        Assignment q = sparling_tod_transform(p);
        // Jacobian d(t,x,y,z)/d(T,X,Y,Z) by central differences
        double jac[4][4];
        const double hstep = 1e-6;
        for (int j = 0; j < 4; ++j) {
            double pp[4], pm[4];
            for (int i = 0; i < 4; ++i)
                pp[i] = pm[i] = pt[i];
            pp[j] += hstep;
            pm[j] -= hstep;
            auto qp = sparling_tod_transform(assign(pp));
            auto qm = sparling_tod_transform(assign(pm));
            for (int i = 0; i < 4; ++i)
                jac[i][j] = (qp.at(small[i]).to_double() - qm.at(small[i]).to_double()) / (2 * hstep);
        }
        auto m = target(q);
        for (int a = 0; a < 4; ++a)
            for (int c = a; c < 4; ++c) {
                double pulled = 0;
                for (int i = 0; i < 4; ++i)
                    for (int k = 0; k < 4; ++k)
                        pulled += jac[i][a] * m[i][k] * jac[k][c];
                double direct = evaluate(b.g(a, c), p).to_double();
                EXPECT_NEAR(pulled, direct, 1e-6 * std::max(1.0, std::abs(direct)));
            }
        ++checked;
    }
    Assignment bad;
    bad.set("T", Number{1.0});
    bad.set("X", Number{1.0});
    bad.set("Y", Number{1.0});
    bad.set("Z", Number{1.0});
    EXPECT_THROW(sparling_tod_transform(bad), GeometryError);
    bad.set("Z", Number{-1.0});
    EXPECT_THROW(sparling_tod_transform(bad), GeometryError);
}

TEST(Construct, HeavenlyFlat)
{
    auto h = build_heavenly(Expr());
    EXPECT_EQ(h.data.verdict.verdict, Verdict::proven_zero);
    auto s = heavenly_two_forms(h.geometry.tet);
    for (const auto& f : s)
        for (const auto& e : f)
            EXPECT_TRUE(e.is_constant());
    for (const auto& v : endomorphism_check(h.geometry.g, s))
        EXPECT_TRUE(v.result.is_zero()) << v.name;
}

TEST(Construct, HeavenlyPpWave)
{
    Expr X = sym("X"), Y = sym("Y"), f = Expr(1) + Y * Y;
    auto h = build_heavenly(X * X * f);
    EXPECT_EQ(h.data.verdict.verdict, Verdict::proven_zero);
    auto pp = build_ppwave(Expr(2) * f);
    EXPECT_TRUE(all_components_zero(h.geometry.g, pp.g));
    auto s = heavenly_two_forms(h.geometry.tet);
    for (const auto& v : endomorphism_check(h.geometry.g, s))
        EXPECT_TRUE(v.result.is_zero()) << v.name;

    // The pulled-back form pi0^2 (dT^dX - Q dY^dX) + pi0 pi1 (dT^dY - dX^dZ) + pi1^2 dZ^dY.
    Expr q = Expr(2) * f, p0 = sym("p0"), p1 = sym("p1");
    auto sig = sigma_pulled_back(s, p0, p1);
    std::array<Expr, 16> ref{};
    auto add = [&](int i, int j, const Expr& c) {
        ref[i * 4 + j] += c;
        ref[j * 4 + i] -= c;
    };
    add(0, 1, p0 * p0);
    add(2, 1, -q * p0 * p0);
    add(0, 2, p0 * p1);
    add(1, 3, -p0 * p1);
    add(3, 2, p1 * p1);
    for (int i = 0; i < 16; ++i)
        EXPECT_TRUE((sig[i] - ref[i]).is_zero()) << i << ": " << sig[i].str();
}

TEST(Construct, HeavenlyRicciFlat)
{
    Expr T = sym("T"), X = sym("X");
    for (const Expr& th : {X * X / T, pow(X, 3) / (T * T)}) {
        auto h = build_heavenly(th);
        EXPECT_TRUE(h.data.verdict.is_zero()) << th.str();
        EXPECT_TRUE(tensor_is_zero(ricci(h.geometry.g)).is_zero());
        EXPECT_TRUE(is_zero(scalar_curvature(h.geometry.g)).is_zero());
        EXPECT_TRUE(primed_zero(h.geometry).is_zero());
        for (const auto& v : endomorphism_check(h.geometry.g, heavenly_two_forms(h.geometry.tet)))
            EXPECT_TRUE(v.result.is_zero()) << v.name;
    }
    // A Theta that misses the equation reports a witness.
    auto bad = build_heavenly(sym("T") * sym("Y") * sym("Z") + X * X * X * sym("T"));
    EXPECT_EQ(bad.data.verdict.verdict, Verdict::nonzero);
    EXPECT_FALSE(bad.geometry.constraints_hold());
}
