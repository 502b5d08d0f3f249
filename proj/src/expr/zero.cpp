#include "nullasd/expr.hpp"

#include <cmath>

namespace nullasd {

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::proven_zero: return "proven_zero";
    case Verdict::sampled_zero: return "sampled_zero";
    case Verdict::nonzero: return "nonzero";
    }
    return "?";
}

Sampler::Sampler(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull) {}

std::uint64_t Sampler::next()
{
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Rational Sampler::next_rational()
{
    long p = static_cast<long>(next() % 97) + 1;
    long q = static_cast<long>(next() % 97) + 1;
    Rational r(p, q);
    r.canonicalize();
    if (next() & 1u)
        r = -r;
    return r;
}

Assignment Sampler::point(const std::set<std::string>& names)
{
    Assignment a;
    for (const auto& n : names)
        a.set(n, next_rational());
    return a;
}

bool point_is_regular(const std::vector<Expr>& es, const Assignment& a, double margin)
{
    try {
        PointEvaluator pe(a);
        for (const auto& e : es) {
            if (pe.min_denominator_magnitude(e) < margin)
                return false;
            pe.eval(e);
        }
        return true;
    } catch (const EvalError&) {
        return false;
    }
}

ZeroResult all_zero(const std::vector<Expr>& es, const SamplingConfig& cfg,
                    std::string* failing_label, const std::vector<std::string>* labels)
{
    ZeroResult res;
    std::vector<std::size_t> open;
    std::set<std::string> names;
    for (std::size_t i = 0; i < es.size(); ++i)
        if (!es[i].is_zero()) {
            open.push_back(i);
            auto fs = es[i].free_symbols();
            names.insert(fs.begin(), fs.end());
        }
    if (open.empty())
        return res;
    res.verdict = Verdict::sampled_zero;
    Sampler sampler(cfg.seed);
    int good = 0;
    long attempts = 0;
    long max_attempts = 10L * std::max(cfg.count, 1);
    while (good < cfg.count) {
        if (attempts++ >= max_attempts) {
            res.verdict = Verdict::nonzero;
            res.value = Number(std::nan(""));
            if (failing_label)
                *failing_label = "sampling failed: no regular points found";
            return res;
        }
        Assignment pt = sampler.point(names);
        PointEvaluator pe(pt);
        try {
            bool regular = true;
            for (std::size_t i : open)
                if (pe.min_denominator_magnitude(es[i]) < 1e-3) {
                    regular = false;
                    break;
                }
            if (!regular)
                continue;
            std::size_t bad = SIZE_MAX;
            for (std::size_t i : open) {
                const Expr& e = es[i];
                if (pe.exact() && !e.has_kernels()) {
                    Number v = pe.eval(Expr::from_rf(detail::RatFun{e.rf().num, {}}));
                    if (v.q() != 0) {
                        bad = i;
                        break;
                    }
                } else {
                    auto [sum, scale] = pe.numerator_with_scale(e);
                    if (std::fabs(sum) > cfg.tolerance * scale) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad != SIZE_MAX) {
                Number v = pe.eval(es[bad]);
                res.verdict = Verdict::nonzero;
                res.witness = pt;
                res.value = v;
                if (failing_label)
                    *failing_label = labels ? (*labels)[bad] : std::to_string(bad);
                return res;
            }
            ++good;
        } catch (const EvalError&) {
            continue;
        }
    }
    return res;
}

ZeroResult is_zero(const Expr& e, const SamplingConfig& cfg)
{
    return all_zero(std::vector<Expr>{e}, cfg);
}

}  // namespace nullasd
