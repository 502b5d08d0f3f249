#include "nullasd/cli.hpp"

#include <fstream>
#include <set>

namespace nullasd {

namespace {

const char* kTetradKeys[4] = {"theta00p", "theta01p", "theta10p", "theta11p"};

Expr parse_field(const json& j, const std::string& where, const std::set<std::string>& allowed)
{
    if (!j.is_string())
        throw InputError(where + ": expected an expression string");
    Expr e;
    try {
        e = parse(j.get<std::string>());
    } catch (const ParseError& ex) {
        throw InputError(where + ": " + ex.what());
    }
    for (const auto& s : e.free_symbols())
        if (!allowed.count(s))
            throw InputError(where + ": undeclared symbol '" + s + "'");
    return e;
}

std::vector<std::string> string_list(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw InputError(where + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string())
            throw InputError(where + ": expected an array of names");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::array<Expr, 4> four(const json& j, const std::string& where, const std::set<std::string>& allowed)
{
    if (!j.is_array() || j.size() != 4)
        throw InputError(where + ": expected 4 expressions");
    std::array<Expr, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = parse_field(j[i], where + "[" + std::to_string(i) + "]", allowed);
    return out;
}

json strings(const std::array<Expr, 4>& a)
{
    json out = json::array();
    for (const auto& e : a)
        out.push_back(e.str());
    return out;
}

}  // namespace

const std::map<std::string, std::vector<BuilderParam>>& builder_schemas()
{
    static const std::map<std::string, std::vector<BuilderParam>> schemas = [] {
        std::vector<std::string> xy{"x", "y"};
        std::map<std::string, std::vector<BuilderParam>> m;
        m["nontwisting"] = {{"A1", xy}, {"A2", xy}, {"A3", xy}, {"beta", xy}, {"P", xy}, {"Q", xy}};
        m["twisting"] = {{"A0", xy}, {"A1", xy}, {"A2", xy}, {"A3", xy}, {"G", {"x", "y", "z"}}};
        m["fefferman"] = {{"A0", xy},    {"A1", xy},    {"A2", xy},  {"A3", xy},
                          {"gamma", xy}, {"delta", xy}, {"rho", xy}, {"sigma", xy}};
        m["ppwave"] = {{"Q", {"X", "Y"}}};
        m["sparling_tod"] = {{"H", {"u", "v"}}};
        m["heavenly"] = {{"Theta", {"T", "X", "Y", "Z"}}};
        return m;
    }();
    return schemas;
}

ModelFile parse_model(const json& j)
{
    if (!j.is_object())
        throw InputError("model: expected a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw InputError("model: missing \"kind\"");
    ModelFile m;
    if (j.contains("parameters"))
        m.parameters = string_list(j["parameters"], "parameters");
    std::set<std::string> params(m.parameters.begin(), m.parameters.end());
    std::string kind = j["kind"].get<std::string>();
    if (kind == "builder") {
        m.kind = ModelKind::builder;
        if (!j.contains("builder") || !j["builder"].is_string())
            throw InputError("builder: missing builder name");
        m.builder = j["builder"].get<std::string>();
        auto it = builder_schemas().find(m.builder);
        if (it == builder_schemas().end())
            throw InputError("builder: unknown builder '" + m.builder + "'");
        const json& p = j.contains("params") ? j["params"] : json::object();
        if (!p.is_object())
            throw InputError("params: expected an object");
        for (const auto& [name, val] : p.items()) {
            const BuilderParam* spec = nullptr;
            for (const auto& bp : it->second)
                if (bp.name == name)
                    spec = &bp;
            if (!spec)
                throw InputError("params: '" + name + "' is not a parameter of " + m.builder);
            std::set<std::string> allowed(spec->symbols.begin(), spec->symbols.end());
            allowed.insert(params.begin(), params.end());
            m.params[name] = parse_field(val, "params." + name, allowed);
        }
        return m;
    }
    if (!j.contains("coordinates"))
        throw InputError(kind + ": missing \"coordinates\"");
    m.coordinates = string_list(j["coordinates"], "coordinates");
    std::set<std::string> allowed(m.coordinates.begin(), m.coordinates.end());
    if (allowed.size() != m.coordinates.size())
        throw InputError("coordinates: repeated name");
    for (const auto& p : m.parameters)
        if (!allowed.insert(p).second)
            throw InputError("parameters: '" + p + "' is also a coordinate");
    if (kind == "projective") {
        m.kind = ModelKind::projective;
        if (m.coordinates.size() != 2)
            throw InputError("projective: expected 2 coordinates");
        if (!j.contains("A"))
            throw InputError("projective: missing \"A\"");
        m.a = four(j["A"], "A", allowed);
        return m;
    }
    if (kind != "metric")
        throw InputError("model: unknown kind '" + kind + "'");
    m.kind = ModelKind::metric;
    if (m.coordinates.size() != 4)
        throw InputError("metric: expected 4 coordinates");
    if (!j.contains("g") || !j["g"].is_array() || j["g"].size() != 4)
        throw InputError("metric: \"g\" must be a 4x4 array");
    for (int a = 0; a < 4; ++a) {
        const json& row = j["g"][a];
        if (!row.is_array() || row.size() != 4)
            throw InputError("metric: \"g\" must be a 4x4 array");
        for (int b = a; b < 4; ++b)
            m.g[a][b] = parse_field(row[b], "g[" + std::to_string(a) + "][" + std::to_string(b) + "]", allowed);
    }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < a; ++b)
            m.g[a][b] = m.g[b][a];
    if (j.contains("tetrad")) {
        const json& t = j["tetrad"];
        if (!t.is_object())
            throw InputError("tetrad: expected an object");
        std::array<std::array<Expr, 4>, 4> th;
        for (int i = 0; i < 4; ++i) {
            if (!t.contains(kTetradKeys[i]))
                throw InputError(std::string("tetrad: missing ") + kTetradKeys[i]);
            th[i] = four(t[kTetradKeys[i]], std::string("tetrad.") + kTetradKeys[i], allowed);
        }
        m.tetrad = th;
    }
    if (j.contains("orientation")) {
        if (!j["orientation"].is_number_integer() ||
            (j["orientation"].get<int>() != 1 && j["orientation"].get<int>() != -1))
            throw InputError("orientation: expected 1 or -1");
        m.orientation = j["orientation"].get<int>();
    }
    if (j.contains("killing"))
        m.killing = four(j["killing"], "killing", allowed);
    return m;
}

ModelFile load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_model(j);
}

json model_to_json(const ModelFile& m)
{
    json out;
    switch (m.kind) {
    case ModelKind::builder: {
        out["kind"] = "builder";
        out["builder"] = m.builder;
        if (!m.parameters.empty())
            out["parameters"] = m.parameters;
        json p = json::object();
        for (const auto& [k, v] : m.params)
            p[k] = v.str();
        out["params"] = p;
        return out;
    }
    case ModelKind::projective:
        out["kind"] = "projective";
        out["coordinates"] = m.coordinates;
        if (!m.parameters.empty())
            out["parameters"] = m.parameters;
        out["A"] = strings(m.a);
        return out;
    case ModelKind::metric:
        break;
    }
    out["kind"] = "metric";
    out["coordinates"] = m.coordinates;
    if (!m.parameters.empty())
        out["parameters"] = m.parameters;
    json g = json::array();
    for (int a = 0; a < 4; ++a) {
        std::array<Expr, 4> row;
        for (int b = 0; b < 4; ++b)
            row[b] = a <= b ? m.g[a][b] : m.g[b][a];
        g.push_back(strings(row));
    }
    out["g"] = g;
    if (m.tetrad) {
        json t;
        for (int i = 0; i < 4; ++i)
            t[kTetradKeys[i]] = strings((*m.tetrad)[i]);
        out["tetrad"] = t;
    }
    if (m.orientation != 1)
        out["orientation"] = m.orientation;
    if (m.killing)
        out["killing"] = strings(*m.killing);
    return out;
}

Geometry realize(const ModelFile& m, const SamplingConfig& cfg)
{
    Geometry geo;
    geo.parameters = m.parameters;
    try {
        if (m.kind == ModelKind::projective) {
            geo.family = "projective";
            geo.proj = ProjectiveStructure{{m.coordinates[0], m.coordinates[1]}, m.a};
            return geo;
        }
        if (m.kind == ModelKind::metric) {
            geo.family = "metric";
            Chart c{m.coordinates[0], m.coordinates[1], m.coordinates[2], m.coordinates[3]};
            validate_chart(c);
            geo.g = Metric(c, m.g);
            if (m.tetrad) {
                std::array<OneForm, 4> th;
                for (int i = 0; i < 4; ++i)
                    th[i] = OneForm{c, (*m.tetrad)[i]};
                geo.tet = NullTetrad(th, m.orientation);
                geo.constraints.push_back({"tetrad", {}, check_tetrad(*geo.g, *geo.tet, cfg).reconstruction});
            }
            if (m.killing)
                geo.k = VectorField{c, *m.killing};
            return geo;
        }
        auto p = [&](const char* name) {
            auto it = m.params.find(name);
            return it == m.params.end() ? Expr() : it->second;
        };
        geo.family = m.builder;
        BuiltGeometry b;
        if (m.builder == "nontwisting") {
            b = build_nontwisting(p("A1"), p("A2"), p("A3"), p("beta"), p("P"), p("Q"), cfg);
        } else if (m.builder == "twisting") {
            b = build_twisting({{"x", "y"}, {p("A0"), p("A1"), p("A2"), p("A3")}}, p("G"), cfg);
        } else if (m.builder == "fefferman") {
            FeffermanData fd{p("gamma"), p("delta"), p("rho"), p("sigma"),
                             {{"x", "y"}, {p("A0"), p("A1"), p("A2"), p("A3")}}};
            b = build_fefferman_like(fd, cfg);
        } else if (m.builder == "ppwave") {
            b = build_ppwave(p("Q"), cfg);
        } else if (m.builder == "sparling_tod") {
            b = build_sparling_tod(p("H"), cfg);
        } else if (m.builder == "heavenly") {
            auto h = build_heavenly(p("Theta"), cfg);
            b = std::move(h.geometry);
            geo.heavenly = std::move(h.data);
        } else {
            throw InputError("unknown builder '" + m.builder + "'");
        }
        geo.g = b.g;
        geo.tet = b.tet;
        if (m.builder != "heavenly")
            geo.k = b.k;
        geo.proj = b.proj;
        geo.constraints = std::move(b.constraints);
    } catch (const VerdictError& e) {
        throw InputError(e.what());
    } catch (const GeometryError& e) {
        throw InputError(e.what());
    }
    return geo;
}

ModelFile metric_model(const Geometry& geo)
{
    if (!geo.g)
        throw InputError("the model has no metric");
    ModelFile m;
    m.kind = ModelKind::metric;
    m.parameters = geo.parameters;
    const Chart& c = geo.g->chart();
    m.coordinates.assign(c.begin(), c.end());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m.g[a][b] = (*geo.g)(a, b);
    if (geo.tet) {
        std::array<std::array<Expr, 4>, 4> th;
        for (int i = 0; i < 4; ++i)
            th[i] = geo.tet->theta(i).c;
        m.tetrad = th;
        m.orientation = geo.tet->sigma();
    }
    if (geo.k)
        m.killing = geo.k->c;
    return m;
}

}  // namespace nullasd
