#include "nullasd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace nullasd {

namespace {

json number_json(const Number& n)
{
    if (n.exact())
        return n.str();
    double d = n.to_double();
    if (std::isfinite(d))
        return d;
    return n.str();
}

json assignment_json(const Assignment& a)
{
    json out = json::object();
    for (const auto& [k, v] : a.values())
        out[k] = number_json(v);
    return out;
}

json strings(const FibredVector& v)
{
    json out = json::array();
    for (const auto& e : v)
        out.push_back(e.str());
    return out;
}

CheckRecord passfail(std::string name, bool ok, bool required = true)
{
    CheckRecord r;
    r.name = std::move(name);
    r.verdict = ok ? "pass" : "fail";
    r.required = required;
    return r;
}

// Extra detail for a record, keeping the value at the witness if there is one.
void attach(CheckRecord& r, json v)
{
    if (r.value)
        v["witness value"] = *r.value;
    r.value = std::move(v);
}

CheckRecord observation(std::string name, json value)
{
    CheckRecord r;
    r.name = std::move(name);
    r.verdict = "pass";
    r.required = false;
    r.value = std::move(value);
    return r;
}

struct Options {
    SamplingConfig cfg;
    std::optional<Assignment> at;
    std::array<double, 3> init{0, 0, 0};
    double step = 0.01;
    int steps = 100;
};

const Metric& need_metric(const Geometry& geo)
{
    if (!geo.g)
        throw InputError("this command needs a metric model");
    return *geo.g;
}

const NullTetrad& need_tetrad(const Geometry& geo)
{
    if (!geo.tet)
        throw InputError("this command needs a null tetrad (add \"tetrad\" to the model)");
    return *geo.tet;
}

const VectorField& need_killing(const Geometry& geo)
{
    if (!geo.k)
        throw InputError("this command needs a Killing vector (add \"killing\" to the model)");
    return *geo.k;
}

const ProjectiveStructure& need_projective(const Geometry& geo)
{
    if (!geo.proj)
        throw InputError("this command needs a projective structure");
    return *geo.proj;
}

std::vector<Expr> guards(const Metric& g)
{
    auto out = g.components();
    out.push_back(g.det());
    return out;
}

std::set<std::string> sample_names(const Geometry& geo, const Metric& g)
{
    std::set<std::string> names(g.chart().begin(), g.chart().end());
    names.insert(geo.parameters.begin(), geo.parameters.end());
    return names;
}

// Regular sample points of the metric, or the --at point alone.
std::vector<Assignment> sample_points(const Geometry& geo, const Metric& g, const Options& opt)
{
    if (opt.at)
        return {*opt.at};
    auto gs = guards(g);
    auto names = sample_names(geo, g);
    Sampler s(opt.cfg.seed);
    std::vector<Assignment> out;
    for (int tries = 0; tries < 40 * opt.cfg.count && static_cast<int>(out.size()) < opt.cfg.count; ++tries) {
        Assignment p = s.point(names);
        if (point_is_regular(gs, p))
            out.push_back(p);
    }
    if (out.empty())
        throw GeometryError("no regular sample point");
    return out;
}

json type_summary(const std::vector<PetrovType>& ts)
{
    json list = json::array();
    bool uniform = true;
    for (auto t : ts) {
        list.push_back(petrov_name(t));
        uniform &= t == ts.front();
    }
    json out;
    out["type"] = ts.empty() ? "none" : (uniform ? petrov_name(ts.front()) : "mixed");
    out["points"] = list;
    return out;
}

using Command = std::function<void(const Geometry&, const Options&, Report&)>;

void cmd_curvature(const Geometry& geo, const Options& opt, Report& rep)
{
    const Metric& g = need_metric(geo);
    for (const auto& v : engine_identities(g, geo.tet ? &*geo.tet : nullptr, opt.cfg))
        rep.checks.push_back(record(v.name, v.result));
    Curvature cv(g);
    rep.checks.push_back(record("ricci", tensor_is_zero(cv.ricci(), opt.cfg), false));
    rep.checks.push_back(record("scalar", is_zero(cv.scalar(), opt.cfg), false));
    rep.checks.push_back(record("weyl", tensor_is_zero(cv.weyl(), opt.cfg), false));
}

void cmd_verify_asd(const Geometry& geo, const Options& opt, Report& rep)
{
    const Metric& g = need_metric(geo);
    if (geo.tet) {
        FrameGeometry fg(*geo.tet);
        auto w = weyl_spinors(fg);
        rep.checks.push_back(record("primed weyl", all_zero({w.primed.psi.begin(), w.primed.psi.end()}, opt.cfg)));
        rep.checks.push_back(
            record("unprimed weyl", all_zero({w.unprimed.psi.begin(), w.unprimed.psi.end()}, opt.cfg), false));
        return;
    }
    // Without a tetrad: a positively oriented numeric frame at each point.
    MetricJet jet(g, 2);
    ZeroResult primed, unprimed;
    primed.verdict = unprimed.verdict = Verdict::sampled_zero;
    for (const auto& p : sample_points(geo, g, opt)) {
        auto [u, pr] = weyl_spinors_at(jet, p);
        auto scan = [&](const std::array<double, 5>& psi, ZeroResult& r) {
            if (!r.is_zero())
                return;
            for (double v : psi)
                if (v != 0) {
                    r.verdict = Verdict::nonzero;
                    r.witness = p;
                    r.value = Number(v);
                    return;
                }
        };
        scan(pr, primed);
        scan(u, unprimed);
    }
    rep.checks.push_back(record("primed weyl", primed));
    rep.checks.push_back(record("unprimed weyl", unprimed, false));
}

void cmd_verify_killing(const Geometry& geo, const Options& opt, Report& rep)
{
    const Metric& g = need_metric(geo);
    const VectorField& k = need_killing(geo);
    rep.checks.push_back(record("conformal killing", tensor_is_zero(conformal_killing_residual(g, k), opt.cfg)));
    rep.checks.push_back(record("killing", tensor_is_zero(lie_derivative_metric(g, k), opt.cfg), false));
    rep.checks.push_back(record("null", is_zero(inner(g, k, k), opt.cfg), false));
}

void cmd_twist(const Geometry& geo, const Options& opt, Report& rep)
{
    const Metric& g = need_metric(geo);
    auto tw = twist_three_form(g, need_killing(geo));
    auto r = record("twist", all_zero({tw.c.begin(), tw.c.end()}, opt.cfg), false);
    json v;
    for (const auto& e : tw.c)
        v["components"].push_back(e.str());
    attach(r, std::move(v));
    rep.checks.push_back(r);
}

void cmd_classify(const Geometry& geo, const Options& opt, Report& rep)
{
    const Metric& g = need_metric(geo);
    std::vector<PetrovType> un, pr;
    if (geo.tet) {
        FrameGeometry fg(*geo.tet);
        auto w = weyl_spinors(fg);
        if (opt.at) {
            try {
                un.push_back(petrov_classify(w.unprimed, *opt.at).type);
                pr.push_back(petrov_classify(w.primed, *opt.at).type);
            } catch (const EvalError& e) {
                throw InputError(std::string("--at: ") + e.what());
            }
        } else {
            for (const auto& s : petrov_at_samples(w.unprimed, guards(g), opt.cfg))
                un.push_back(s.petrov.type);
            for (const auto& s : petrov_at_samples(w.primed, guards(g), opt.cfg))
                pr.push_back(s.petrov.type);
        }
    } else {
        MetricJet jet(g, 2);
        for (const auto& p : sample_points(geo, g, opt)) {
            auto [u, q] = weyl_spinors_at(jet, p);
            un.push_back(classify_quartic(u).type);
            pr.push_back(classify_quartic(q).type);
        }
    }
    rep.checks.push_back(observation("petrov", type_summary(un)));
    rep.checks.push_back(observation("petrov primed", type_summary(pr)));
}

void cmd_invariants(const Geometry& geo, const Options& opt, Report& rep)
{
    FrameGeometry fg(need_tetrad(geo));
    auto w = weyl_spinors(fg);
    auto inv = scalar_invariants(w.unprimed);
    Expr disc = pow(inv.I, 3) - Expr(6) * pow(inv.J, 2);
    for (auto [name, e] : {std::pair<const char*, Expr>{"I", inv.I}, {"J", inv.J}, {"I^3-6J^2", disc}}) {
        auto r = record(name, is_zero(e, opt.cfg), false);
        json v;
        v["expression"] = e.str();
        if (opt.at) {
            try {
                v["at"] = number_json(evaluate(e, *opt.at));
            } catch (const EvalError& ex) {
                throw InputError(std::string("--at: ") + ex.what());
            }
        }
        attach(r, std::move(v));
        rep.checks.push_back(r);
    }
}

void cmd_lemma21(const Geometry& geo, const Options& opt, Report& rep)
{
    FrameGeometry fg(need_tetrad(geo));
    for (const auto& v : check_lemma_identities(fg, need_killing(geo), opt.cfg))
        rep.checks.push_back(record(v.name, v.result));
}

void cmd_szekeres(const Geometry& geo, const Options& opt, Report& rep)
{
    auto s = szekeres_obstruction(need_metric(geo), opt.cfg);
    auto r = record("szekeres", s.result, false);
    json v;
    v["applicable"] = s.applicable;
    v["algebraic"] = verdict_name(s.algebraic.verdict);
    v["closure"] = verdict_name(s.closure.verdict);
    v["types"] = type_summary(s.types)["type"];
    if (!s.failing.empty())
        v["component"] = s.failing;
    attach(r, std::move(v));
    rep.checks.push_back(r);
}

void cmd_laxpair(const Geometry& geo, const Options& opt, Report& rep)
{
    auto lp = lax_pair(need_tetrad(geo));
    auto ic = integrability_check(lp, opt.cfg);
    auto r = record("integrability", ic.solve.verdict);
    json v;
    v["L0"] = strings(lp.l0);
    v["L1"] = strings(lp.l1);
    if (!ic.solve.failing.empty())
        v["component"] = ic.solve.failing;
    else {
        v["c0"] = ic.solve.c0.str();
        v["c1"] = ic.solve.c1.str();
    }
    attach(r, std::move(v));
    rep.checks.push_back(r);
}

void cmd_lift_check(const Geometry& geo, const Options& opt, Report& rep)
{
    const NullTetrad& t = need_tetrad(geo);
    LiftedKilling kl;
    try {
        kl = lift_killing(t, need_killing(geo), opt.cfg);
    } catch (const VerdictError& e) {
        rep.checks.push_back(record("conformal killing", e.result));
        return;
    }
    rep.checks.push_back(observation("lift", strings(kl.v)));
    auto lc = lift_commutation_check(kl, lax_pair(t), opt.cfg);
    for (int a = 0; a < 2; ++a) {
        auto r = record("commutation L" + std::to_string(a), lc.solves[a].verdict);
        json v;
        v["m0"] = lc.solves[a].c0.str();
        v["m1"] = lc.solves[a].c1.str();
        attach(r, std::move(v));
        rep.checks.push_back(r);
    }
}

void cmd_projective_flatness(const Geometry& geo, const Options& opt, Report& rep)
{
    auto f = flatness_invariant(need_projective(geo), opt.cfg);
    auto r = record("flatness", f.result, false);
    json v;
    v["invariant"] = f.invariant.str();
    attach(r, std::move(v));
    rep.checks.push_back(r);
}

void cmd_projective_geodesic(const Geometry& geo, const Options& opt, Report& rep)
{
    const auto& p = need_projective(geo);
    Assignment params;
    for (const auto& name : geo.parameters) {
        if (!opt.at || !opt.at->has(name))
            throw InputError("parameter '" + name + "' needs a value in --at");
        params.set(name, opt.at->at(name));
    }
    auto path = geodesic_integrate(p, opt.init, opt.step, opt.steps, params);
    auto r = passfail("geodesic", path.complete);
    json v;
    json pts = json::array();
    for (const auto& s : path.points)
        pts.push_back({s[0], s[1], s[2]});
    v["points"] = pts;
    if (!path.complete)
        v["error"] = path.error;
    attach(r, std::move(v));
    rep.checks.push_back(r);
}

void cmd_heavenly(const Geometry& geo, const Options& opt, Report& rep)
{
    if (!geo.heavenly)
        throw InputError("this command needs a heavenly builder model");
    rep.checks.push_back(record("heavenly equation", geo.heavenly->verdict));
    const NullTetrad& t = need_tetrad(geo);
    auto sigma = heavenly_two_forms(t);
    for (const auto& v : endomorphism_check(*geo.g, sigma, opt.cfg))
        rep.checks.push_back(record(v.name, v.result));
    auto sp = sigma_pulled_back(sigma, sym("pi0"), sym("pi1"));
    json v = json::object();
    const Chart& c = t.chart();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!sp[i * 4 + j].is_zero())
                v["d" + c[i] + "^d" + c[j]] = sp[i * 4 + j].str();
    rep.checks.push_back(observation("sigma", v));
}

const std::map<std::string, Command>& commands()
{
    static const std::map<std::string, Command> m{
        {"curvature", cmd_curvature},
        {"verify-asd", cmd_verify_asd},
        {"verify-killing", cmd_verify_killing},
        {"twist", cmd_twist},
        {"classify", cmd_classify},
        {"invariants", cmd_invariants},
        {"lemma21", cmd_lemma21},
        {"szekeres", cmd_szekeres},
        {"laxpair", cmd_laxpair},
        {"lift-check", cmd_lift_check},
        {"projective-flatness", cmd_projective_flatness},
        {"projective-geodesic", cmd_projective_geodesic},
        {"heavenly", cmd_heavenly},
    };
    return m;
}

// Which commands report-all runs for a geometry.
bool applicable(const std::string& name, const Geometry& geo)
{
    if (name == "projective-flatness")
        return geo.proj.has_value();
    if (name == "projective-geodesic")
        return geo.proj.has_value() && geo.parameters.empty();
    if (name == "heavenly")
        return geo.heavenly.has_value();
    if (!geo.g)
        return false;
    if (name == "invariants" || name == "laxpair")
        return geo.tet.has_value();
    if (name == "lemma21" || name == "lift-check")
        return geo.tet.has_value() && geo.k.has_value();
    if (name == "verify-killing" || name == "twist")
        return geo.k.has_value();
    return true;
}

void run_command(const std::string& name, const Geometry& geo, const Options& opt, Report& rep)
{
    try {
        commands().at(name)(geo, opt, rep);
    } catch (const InputError&) {
        throw;
    } catch (const VerdictError& e) {
        auto r = record(name, e.result);
        r.value = e.what();
        rep.checks.push_back(r);
    } catch (const GeometryError& e) {
        auto r = passfail(name, false);
        r.value = e.what();
        rep.checks.push_back(r);
    } catch (const EvalError& e) {
        auto r = passfail(name, false);
        r.value = e.what();
        rep.checks.push_back(r);
    }
}

Assignment parse_point(const std::string& text)
{
    Assignment a;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("--at: expected name=value, got '" + item + "'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        std::string name = trim(item.substr(0, eq));
        try {
            a.set(name, Number(parse_rational(trim(item.substr(eq + 1)))));
        } catch (const std::exception& e) {
            throw InputError("--at: bad value for " + name + ": " + e.what());
        }
    }
    return a;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out)
{
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw InputError("cannot write " + out_path);
    f << text;
}

}  // namespace

CheckRecord record(std::string name, const ZeroResult& r, bool required)
{
    CheckRecord c;
    c.name = std::move(name);
    c.verdict = verdict_name(r.verdict);
    c.required = required;
    if (!r.is_zero()) {
        c.witness = assignment_json(r.witness);
        c.value = number_json(r.value);
    }
    return c;
}

bool Report::failed() const
{
    return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.failed(); });
}

json report_json(const Report& r)
{
    json out;
    out["version"] = 1;
    out["command"] = r.command;
    out["seed"] = r.seed;
    out["tolerance"] = r.tolerance;
    out["points"] = r.points;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j;
        j["name"] = c.name;
        j["verdict"] = c.verdict;
        j["required"] = c.required;
        if (c.witness)
            j["witness"] = *c.witness;
        if (c.value)
            j["value"] = *c.value;
        checks.push_back(j);
    }
    out["checks"] = checks;
    out["status"] = r.failed() ? "fail" : "pass";
    return out;
}

std::string report_text(const Report& r)
{
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << c.name << ": " << c.verdict;
        if (!c.required)
            os << " (observation)";
        if (c.witness)
            os << " at " << c.witness->dump();
        if (c.value)
            os << " value " << (c.value->is_string() ? c.value->get<std::string>() : c.value->dump());
        os << "\n";
    }
    os << (r.failed() ? "FAIL" : "PASS") << "\n";
    return os.str();
}

std::vector<NamedVerdict> engine_identities(const Metric& g, const NullTetrad* tet, const SamplingConfig& cfg)
{
    Curvature cv(g);
    const auto& R = cv.riemann_lower();
    TensorField anti(g.chart(), {Valence::down, Valence::down, Valence::down, Valence::down});
    TensorField pair = anti, bianchi = anti;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int e = 0; e < 4; ++e) {
                    anti(a, b, c, e) = R(a, b, c, e) + R(b, a, c, e);
                    pair(a, b, c, e) = R(a, b, c, e) - R(c, e, a, b);
                    bianchi(a, b, c, e) = R(a, b, c, e) + R(a, c, e, b) + R(a, e, b, c);
                }
    std::vector<NamedVerdict> out;
    out.push_back({"riemann antisymmetry", tensor_is_zero(anti, cfg)});
    out.push_back({"riemann pair symmetry", tensor_is_zero(pair, cfg)});
    out.push_back({"first bianchi", tensor_is_zero(bianchi, cfg)});
    out.push_back({"metric compatibility", tensor_is_zero(metric_compatibility(cv), cfg)});
    if (tet) {
        FrameGeometry fg(*tet);
        auto cs = curvature_spinors(fg);
        auto re = reassemble_riemann(cs);
        const auto& fr = fg.riemann();
        std::vector<Expr> diff(re.size());
        for (std::size_t i = 0; i < re.size(); ++i)
            diff[i] = re[i] - fr[i];
        out.push_back({"spinor reassembly", all_zero(diff, cfg)});
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification tool for neutral anti-self-dual conformal structures", "nullasd"};
    app.require_subcommand(1);
    Options opt;
    std::string at_text, init_text, format = "json", out_path, builder;
    std::vector<std::string> param_texts;
    std::string model_path;
    bool points_set = false;
    app.add_option("--points", opt.cfg.count, "sample points per zero test")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { points_set = true; });
    app.add_option("--seed", opt.cfg.seed, "sampling seed");
    app.add_option("--tol", opt.cfg.tolerance, "relative tolerance in floating point contexts")
        ->check(CLI::PositiveNumber);
    app.add_option("--at", at_text, "evaluation point, e.g. \"x=1,y=2\"");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write the report to a file");
    app.add_option("--init", init_text, "geodesic initial data \"x,y,lambda\"");
    app.add_option("--step", opt.step, "geodesic step size");
    app.add_option("--steps", opt.steps, "number of geodesic steps")->check(CLI::NonNegativeNumber);

    std::vector<std::string> names{"build", "report-all"};
    for (const auto& [name, fn] : commands())
        names.push_back(name);
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        auto* pos = sub->add_option("model", model_path, "model file (JSON)");
        if (name == "build") {
            sub->add_option("--builder", builder, "builder name");
            sub->add_option("--param", param_texts, "builder parameter name=expression")->take_all();
        } else {
            pos->required();
        }
        subs[name] = sub;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    (void)points_set;

    std::string name;
    for (const auto& [n, sub] : subs)
        if (sub->parsed())
            name = n;

    try {
        if (!at_text.empty())
            opt.at = parse_point(at_text);
        if (!init_text.empty()) {
            std::stringstream ss(init_text);
            std::string item;
            int i = 0;
            while (std::getline(ss, item, ',')) {
                if (i >= 3)
                    throw InputError("--init: expected x,y,lambda");
                try {
                    opt.init[i++] = std::stod(item);
                } catch (const std::exception&) {
                    throw InputError("--init: bad number '" + item + "'");
                }
            }
            if (i != 3)
                throw InputError("--init: expected x,y,lambda");
        }

        ModelFile model;
        if (name == "build" && model_path.empty()) {
            if (builder.empty())
                throw InputError("build: give a builder model file or --builder");
            json j;
            j["kind"] = "builder";
            j["builder"] = builder;
            json p = json::object();
            for (const auto& t : param_texts) {
                auto eq = t.find('=');
                if (eq == std::string::npos)
                    throw InputError("--param: expected name=expression, got '" + t + "'");
                p[t.substr(0, eq)] = t.substr(eq + 1);
            }
            j["params"] = p;
            model = parse_model(j);
        } else {
            model = load_model(model_path);
        }
        Geometry geo = realize(model, opt.cfg);

        if (name == "build") {
            emit(model_to_json(metric_model(geo)).dump(2) + "\n", out_path, out);
            bool ok = true;
            for (const auto& c : geo.constraints)
                if (!c.verdict.is_zero()) {
                    err << "constraint " << c.name << " fails at " << c.verdict.witness.str() << "\n";
                    ok = false;
                }
            return ok ? 0 : 1;
        }

        Report rep;
        rep.command = args;
        rep.seed = opt.cfg.seed;
        rep.tolerance = opt.cfg.tolerance;
        rep.points = opt.cfg.count;
        if (name == "report-all") {
            for (const auto& c : geo.constraints)
                rep.checks.push_back(record("build/" + c.name, c.verdict));
            for (const auto& [cmd, fn] : commands()) {
                if (!applicable(cmd, geo))
                    continue;
                Report part;
                run_command(cmd, geo, opt, part);
                for (auto& c : part.checks) {
                    c.name = cmd + "/" + c.name;
                    rep.checks.push_back(std::move(c));
                }
            }
        } else {
            run_command(name, geo, opt, rep);
        }
        std::stable_sort(rep.checks.begin(), rep.checks.end(),
                         [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
        emit(format == "json" ? report_json(rep).dump(2) + "\n" : report_text(rep), out_path, out);
        return rep.failed() ? 1 : 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nullasd
