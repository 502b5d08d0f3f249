#include "nullasd/spinor.hpp"

namespace nullasd {

TensorField conformal_killing_residual(const Metric& g, const VectorField& k)
{
    TensorField lk = lie_derivative_metric(g, k);
    auto gi = inverse4(g.matrix());
    Expr trace;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (!gi[a * 4 + b].is_zero() && !lk(a, b).is_zero())
                trace += gi[a * 4 + b] * lk(a, b);
    Expr eta = trace / Expr(4);
    TensorField r(g.chart(), {Valence::down, Valence::down});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            r(a, b) = lk(a, b) - eta * g(a, b);
    return r;
}

KillingSpinorData killing_decompose(FrameGeometry& fg, const VectorField& k, const SamplingConfig& cfg)
{
    const NullTetrad& t = fg.tetrad();
    Metric g = t.metric();
    std::string failing;
    auto res = tensor_is_zero(conformal_killing_residual(g, k), cfg, &failing, "LKg-eta*g");
    if (!res.is_zero())
        throw VerdictError("not a conformal Killing vector (" + failing + ")", res);
    auto kc = t.components(k);
    KillingSpinorData out;
    // nabla_a K_b = e_a(K^c) eta_cb + K^c omega(a,c,d) eta_db
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Expr v;
            for (int c = 0; c < 4; ++c) {
                int s = frame_metric(c, b);
                if (s && !kc[c].is_zero())
                    v += Expr(s) * fg.apply(a, kc[c]);
                if (kc[c].is_zero())
                    continue;
                for (int d = 0; d < 4; ++d)
                    if (int sd = frame_metric(d, b))
                        if (!fg.omega(a, c, d).is_zero())
                            v += Expr(sd) * kc[c] * fg.omega(a, c, d);
            }
            out.nabla_k[a * 4 + b] = v;
        }
    auto sp = decompose_two_form(out.nabla_k);
    out.phi = sp.phi;
    out.psi = sp.psi;
    Expr trace;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (int s = frame_metric(a, b))
                trace += Expr(s) * out.nabla_k[a * 4 + b];
    out.eta = trace / Expr(2);
    return out;
}

NullFactorization null_killing_factorize(const Metric& g, const NullTetrad& t, const VectorField& k,
                                         const SamplingConfig& cfg)
{
    auto norm = is_zero(inner(g, k, k), cfg);
    if (!norm.is_zero())
        throw VerdictError("vector is not null", norm);
    auto kc = t.components(k);
    for (int a = 0; a < 4; ++a) {
        if (is_zero(kc[a], cfg).is_zero())
            continue;
        int A = spinor_part(a), Ap = primed_part(a);
        NullFactorization f;
        f.iota.c = {kc[frame_index(0, Ap)], kc[frame_index(1, Ap)]};
        f.o.c = {kc[frame_index(A, 0)] / kc[a], kc[frame_index(A, 1)] / kc[a]};
        f.o.primed = true;
        return f;
    }
    ZeroResult z;
    z.verdict = Verdict::sampled_zero;
    throw VerdictError("vector vanishes identically", z);
}

std::vector<NamedVerdict> check_lemma_identities(FrameGeometry& fg, const VectorField& k, const SamplingConfig& cfg)
{
    const NullTetrad& t = fg.tetrad();
    auto kd = killing_decompose(fg, k, cfg);
    auto nf = null_killing_factorize(t.metric(), t, k, cfg);
    const auto& io = nf.iota.c;
    const auto& o = nf.o.c;
    std::vector<NamedVerdict> out;
    Expr two(2);
    out.push_back({"iota.iota.psi", is_zero(io[0] * io[0] * kd.psi[0] + two * io[0] * io[1] * kd.psi[1] +
                                                 io[1] * io[1] * kd.psi[2],
                                             cfg)});
    out.push_back({"o.o.phi", is_zero(o[0] * o[0] * kd.phi[0] + two * o[0] * o[1] * kd.phi[1] +
                                          o[1] * o[1] * kd.phi[2],
                                      cfg)});
    // Lowered components: mu_0 = -mu^1, mu_1 = mu^0.
    std::array<Expr, 2> il{-io[1], io[0]}, ol{-o[1], o[0]};
    std::vector<Expr> gsf1, gsf2;
    for (int Xp = 0; Xp < 2; ++Xp) {
        Expr v;
        for (int A = 0; A < 2; ++A)
            for (int B = 0; B < 2; ++B) {
                int d = frame_index(B, Xp);
                Expr nab = fg.apply(d, il[A]);
                for (int C = 0; C < 2; ++C)
                    nab -= fg.spin_unprimed(d, A, C) * il[C];
                v += io[A] * io[B] * nab;
            }
        gsf1.push_back(v);
    }
    for (int X = 0; X < 2; ++X) {
        Expr v;
        for (int Ap = 0; Ap < 2; ++Ap)
            for (int Bp = 0; Bp < 2; ++Bp) {
                int d = frame_index(X, Bp);
                Expr nab = fg.apply(d, ol[Ap]);
                for (int Cp = 0; Cp < 2; ++Cp)
                    nab -= fg.spin_primed(d, Ap, Cp) * ol[Cp];
                v += o[Ap] * o[Bp] * nab;
            }
        gsf2.push_back(v);
    }
    out.push_back({"iota.iota.nabla.iota", all_zero(gsf1, cfg)});
    out.push_back({"o.o.nabla.o", all_zero(gsf2, cfg)});
    return out;
}

}  // namespace nullasd
