// Model files, reports and command dispatch for the nullasd tool.
#pragma once

#include "nullasd/construct.hpp"
#include "nullasd/twistor.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullasd {

using json = nlohmann::ordered_json;

// Bad input: unreadable file, malformed JSON or expression, unknown names.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { metric, projective, builder };

struct ModelFile {
    ModelKind kind = ModelKind::metric;
    std::vector<std::string> coordinates;
    std::vector<std::string> parameters;  // free constants, sampled like coordinates

    // metric
    std::array<std::array<Expr, 4>, 4> g{};  // upper triangle authoritative
    std::optional<std::array<std::array<Expr, 4>, 4>> tetrad;  // theta00', theta01', theta10', theta11'
    int orientation = 1;
    std::optional<std::array<Expr, 4>> killing;

    // projective
    std::array<Expr, 4> a{};

    // builder
    std::string builder;
    std::map<std::string, Expr> params;
};

ModelFile parse_model(const json& j);
ModelFile load_model(const std::string& path);
json model_to_json(const ModelFile& m);

// A builder parameter and the symbols it may depend on. Missing parameters
// default to 0.
struct BuilderParam {
    std::string name;
    std::vector<std::string> symbols;
};
const std::map<std::string, std::vector<BuilderParam>>& builder_schemas();

// Everything the commands can work with, realized from a model file.
struct Geometry {
    std::string family;  // builder name or "metric"/"projective"
    std::optional<Metric> g;
    std::optional<NullTetrad> tet;
    std::optional<VectorField> k;
    std::optional<ProjectiveStructure> proj;
    std::vector<Constraint> constraints;
    std::optional<HeavenlyData> heavenly;
    std::vector<std::string> parameters;
};

Geometry realize(const ModelFile& m, const SamplingConfig& cfg = {});

// The metric model (with tetrad and Killing vector) of a realized geometry.
ModelFile metric_model(const Geometry& geo);

struct CheckRecord {
    std::string name;
    std::string verdict;  // proven_zero, sampled_zero, nonzero, pass, fail
    bool required = true;
    std::optional<json> witness;
    std::optional<json> value;

    bool failed() const { return required && (verdict == "nonzero" || verdict == "fail"); }
};

CheckRecord record(std::string name, const ZeroResult& r, bool required = true);

struct Report {
    std::vector<std::string> command;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    int points = 50;
    std::vector<CheckRecord> checks;

    bool failed() const;
};

json report_json(const Report& r);
std::string report_text(const Report& r);

// The curvature identities of the engine on one metric: Riemann antisymmetry,
// pair symmetry, first Bianchi identity, metric compatibility and, with a
// tetrad, reassembly of R_abcd from its spinor parts.
std::vector<NamedVerdict> engine_identities(const Metric& g, const NullTetrad* tet, const SamplingConfig& cfg = {});

// Runs a command line (without the program name). Returns 0 when every
// required check holds, 1 when one fails and 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nullasd
