#include "nullasd/twistor.hpp"

namespace nullasd {

namespace {

const char* kComponent[5] = {"0", "1", "2", "3", "lambda"};

std::string component_name(const Chart& c, int i) { return i < 4 ? c[i] : kFibre; }

// Vertical vector V^C' on the spin bundle pushed to d/dlambda at pi = (1, lambda).
Expr projectivize(const std::array<Expr, 2>& v)
{
    return v[1] - sym(kFibre) * v[0];
}

FibredVector scaled(const FibredVector& u, const Expr& s)
{
    FibredVector out;
    for (int i = 0; i < 5; ++i)
        out[i] = s * u[i];
    return out;
}

}  // namespace

Expr apply(const Chart& c, const FibredVector& u, const Expr& f)
{
    Expr out;
    for (int i = 0; i < 5; ++i)
        if (!u[i].is_zero())
            out += u[i] * differentiate(f, component_name(c, i));
    return out;
}

FibredVector commutator(const Chart& c, const FibredVector& u, const FibredVector& v)
{
    FibredVector out;
    for (int i = 0; i < 5; ++i)
        out[i] = apply(c, u, v[i]) - apply(c, v, u[i]);
    return out;
}

LaxPair lax_pair(const NullTetrad& t)
{
    FrameGeometry fg(t);
    const Expr l = sym(kFibre);
    const std::array<Expr, 2> pi{Expr(1), l};
    LaxPair lp;
    lp.chart = t.chart();
    for (int A = 0; A < 2; ++A) {
        FibredVector out;
        const auto& e0 = t.e(frame_index(A, 0)).c;
        const auto& e1 = t.e(frame_index(A, 1)).c;
        for (int i = 0; i < 4; ++i)
            out[i] = e0[i] + l * e1[i];
        // V^C' = -pi^A' pi^B' Gamma_{AA' B'}^C'
        std::array<Expr, 2> v;
        for (int Cp = 0; Cp < 2; ++Cp)
            for (int Ap = 0; Ap < 2; ++Ap)
                for (int Bp = 0; Bp < 2; ++Bp)
                    v[Cp] -= pi[Ap] * pi[Bp] * fg.spin_primed(frame_index(A, Ap), Bp, Cp);
        out[4] = projectivize(v);
        (A == 0 ? lp.l0 : lp.l1) = out;
    }
    return lp;
}

LaxPair lax_pair(const BuiltGeometry& bg) { return lax_pair(bg.tet); }

LaxPair fibre_transform(const LaxPair& lp, const Expr& forward, const Expr& inverse)
{
    std::map<std::string, Expr> back{{kFibre, inverse}};
    auto move = [&](const FibredVector& u) {
        FibredVector out;
        for (int i = 0; i < 4; ++i)
            out[i] = substitute(u[i], back);
        out[4] = substitute(apply(lp.chart, u, forward), back);
        return out;
    };
    return {lp.chart, move(lp.l0), move(lp.l1)};
}

LaxPair other_patch(const LaxPair& lp)
{
    const Expr l = sym(kFibre);
    Expr inv = Expr(1) / l;
    LaxPair out = fibre_transform(lp, inv, inv);
    // Weight one: divide by pi^1' = 1/mu rather than pi^0'.
    out.l0 = scaled(out.l0, l);
    out.l1 = scaled(out.l1, l);
    return out;
}

SpanSolve solve_in_span(const FibredVector& a0, const FibredVector& a1, const FibredVector& v,
                        const SamplingConfig& cfg)
{
    SpanSolve out;
    for (int i = 0; i < 5 && out.minor.first < 0; ++i)
        for (int j = i + 1; j < 5; ++j) {
            Expr det = a0[i] * a1[j] - a0[j] * a1[i];
            if (det.is_zero() || is_zero(det, cfg).is_zero())
                continue;
            out.minor = {i, j};
            Expr n0 = v[i] * a1[j] - v[j] * a1[i];
            Expr n1 = a0[i] * v[j] - a0[j] * v[i];
            out.c0 = n0 / det;
            out.c1 = n1 / det;
            for (int k = 0; k < 5; ++k)
                out.residual[k] = det * v[k] - n0 * a0[k] - n1 * a1[k];
            break;
        }
    if (out.minor.first < 0)
        throw GeometryError("the pair has rank below two at every sample point");
    std::vector<std::string> labels(kComponent, kComponent + 5);
    out.verdict = all_zero({out.residual.begin(), out.residual.end()}, cfg, &out.failing, &labels);
    return out;
}

Integrability integrability_check(const LaxPair& lp, const SamplingConfig& cfg)
{
    Integrability out;
    out.bracket = commutator(lp.chart, lp.l0, lp.l1);
    out.solve = solve_in_span(lp.l0, lp.l1, out.bracket, cfg);
    return out;
}

ZeroResult same_distribution(const LaxPair& a, const LaxPair& b, const SamplingConfig& cfg)
{
    auto s0 = solve_in_span(a.l0, a.l1, b.l0, cfg);
    if (!s0.verdict.is_zero())
        return s0.verdict;
    auto s1 = solve_in_span(a.l0, a.l1, b.l1, cfg);
    if (!s1.verdict.is_zero())
        return s1.verdict;
    // b must itself have rank two.
    solve_in_span(b.l0, b.l1, a.l0, cfg);
    return s0.verdict.verdict == Verdict::proven_zero ? s1.verdict : s0.verdict;
}

LiftedKilling lift_vector(const NullTetrad& t, const VectorField& k)
{
    FrameGeometry fg(t);
    const Expr l = sym(kFibre);
    const std::array<Expr, 2> pi{Expr(1), l};
    auto kc = t.components(k);
    // A^b_a = nabla_a K^b
    auto nabla = [&](int a, int b) {
        Expr v = fg.apply(a, kc[b]);
        for (int c = 0; c < 4; ++c)
            if (!kc[c].is_zero())
                v += kc[c] * fg.omega(a, c, b);
        return v;
    };
    std::array<Expr, 2> v;
    for (int Cp = 0; Cp < 2; ++Cp)
        for (int Bp = 0; Bp < 2; ++Bp) {
            Expr n;
            for (int X = 0; X < 2; ++X)
                n += nabla(frame_index(X, Bp), frame_index(X, Cp));
            Expr m = n / Expr(2);
            for (int d = 0; d < 4; ++d)
                if (!kc[d].is_zero())
                    m -= kc[d] * fg.spin_primed(d, Bp, Cp);
            v[Cp] += pi[Bp] * m;
        }
    LiftedKilling out;
    out.chart = t.chart();
    for (int i = 0; i < 4; ++i)
        out.v[i] = k.c[i];
    out.v[4] = projectivize(v);
    return out;
}

LiftedKilling lift_killing(const NullTetrad& t, const VectorField& k, const SamplingConfig& cfg)
{
    std::string failing;
    auto res = tensor_is_zero(conformal_killing_residual(t.metric(), k), cfg, &failing, "LKg-eta*g");
    if (!res.is_zero())
        throw VerdictError("not a conformal Killing vector (" + failing + ")", res);
    return lift_vector(t, k);
}

LiftedKilling lift_killing(const BuiltGeometry& bg, const SamplingConfig& cfg)
{
    return lift_killing(bg.tet, bg.k, cfg);
}

LiftCommutation lift_commutation_check(const LiftedKilling& kl, const LaxPair& lp, const SamplingConfig& cfg)
{
    LiftCommutation out;
    out.solves[0] = solve_in_span(lp.l0, lp.l1, commutator(lp.chart, kl.v, lp.l0), cfg);
    out.solves[1] = solve_in_span(lp.l0, lp.l1, commutator(lp.chart, kl.v, lp.l1), cfg);
    return out;
}

LaxPair normalized_lax_pair_nontwisting(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& beta,
                                        const Expr& p, const Expr& q)
{
    const Expr l = sym(kFibre), z = sym("z");
    Expr bx = differentiate(beta, "x"), by = differentiate(beta, "y");
    Expr a0 = bx + beta * by - beta * a1 - beta * beta * a2 - beta * beta * beta * a3;
    ProjectiveStructure proj{{"x", "y"}, {a0, a1, a2, a3}};
    LaxPair lp;
    lp.chart = kNormalFormChart;
    lp.l0 = {Expr(1), Expr(), Expr(), l - beta, Expr()};
    lp.l1 = {l * (q - z * a3), Expr(1), l,
             z * (-by + a1 + beta * a2 + beta * beta * a3) + l * (z * (a2 + Expr(2) * beta * a3) + p),
             proj.fibre_polynomial()};
    return lp;
}

LaxPair normalized_lax_pair_twisting(const ProjectiveStructure& proj, const Expr& g)
{
    const Expr l = sym(kFibre), z = sym("z");
    const auto& a = proj.a;
    Expr gz = differentiate(g, "z");
    Expr gzz = differentiate(gz, "z");
    Expr gzy = differentiate(gz, "y");
    LaxPair lp;
    lp.chart = kNormalFormChart;
    lp.l0 = {gzz, Expr(), Expr(), l - z, Expr()};
    lp.l1 = {gzy - gz * a[2] - Expr(2) * a[3] * (z * gz - g) - l * gz * a[3], Expr(1), l,
             a[0] + z * (a[1] + z * (a[2] + z * a[3])), proj.fibre_polynomial()};
    return lp;
}

}  // namespace nullasd
