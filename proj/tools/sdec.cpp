#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "sdec/delaunay.hpp"
#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"
#include "sdec/hodge.hpp"
#include "sdec/mesh_io.hpp"
#include "sdec/poisson.hpp"
#include "sdec/report.hpp"
#include "sdec/signed_dual.hpp"

namespace {

using nlohmann::json;
using sdec::format_double;

constexpr int kExitNotQualifying = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

// Writes to the file if one was given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw sdec::Error("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string join(const std::vector<sdec::Index>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void check_dim(const sdec::SimplicialComplex& cx, int p)
{
    if (p < 0 || p > cx.dim())
        throw CLI::ValidationError("-p", "must be between 0 and " + std::to_string(cx.dim()));
}

void print_text_report(const sdec::SimplicialComplex& cx, const sdec::MeshReport& r)
{
    using namespace sdec;
    std::cout << "dimension " << r.dim << " in R^" << r.ambient_dim << ", counts";
    for (auto c : r.counts) std::cout << ' ' << c;
    std::cout << "\ninterior pairs: " << r.pairs.size() << " (" << r.count_pairs(PairStatus::strict) << " strict, "
              << r.count_pairs(PairStatus::degenerate) << " degenerate, " << r.count_pairs(PairStatus::violated)
              << " violated)\n";
    std::cout << "boundary facets: " << r.boundary.size() << " (" << r.count_boundary(OneSided::yes)
              << " one-sided, " << r.count_boundary(OneSided::marginal) << " marginal, "
              << r.count_boundary(OneSided::no) << " not one-sided)\n";
    for (const auto& f : r.pairs)
        if (f.status != PairStatus::strict)
            std::cout << "  pair " << to_string(f.status) << ": facet [" << join(cx.simplex(r.dim - 1, f.facet).vertices)
                      << "]\n";
    for (const auto& f : r.boundary)
        if (f.status != OneSided::yes)
            std::cout << "  boundary " << to_string(f.status) << ": facet ["
                      << join(cx.simplex(r.dim - 1, f.facet).vertices) << "]\n";
    std::cout << "nonpositive duals: " << r.nonpositive_duals.size() << '\n';
    for (const auto& d : r.nonpositive_duals)
        std::cout << "  dim " << d.dim << " [" << join(cx.simplex(d.dim, d.simplex).vertices)
                  << "] signed volume " << format_double(d.signed_volume) << '\n';
    for (const auto& n : r.notes) std::cout << "note: " << n << '\n';
    std::cout << "verdict: " << (r.qualifying() ? "qualifying" : "not qualifying") << '\n';
}

sdec::Figure1Config figure_config(const json& cfg)
{
    sdec::Figure1Config c;
    c.cells = cfg.value("cells", c.cells);
    c.jitter = cfg.value("jitter", c.jitter);
    c.seed = cfg.value("seed", c.seed);
    c.flips = cfg.value("flips", c.flips);
    if (cfg.contains("flux")) {
        const json& f = cfg.at("flux");
        c.flux.left = f.value("left", c.flux.left);
        c.flux.right = f.value("right", c.flux.right);
        c.flux.bottom = f.value("bottom", c.flux.bottom);
        c.flux.top = f.value("top", c.flux.top);
    }
    return c;
}

sdec::MeshFamily family_from(const std::string& s)
{
    if (s == "good") return sdec::MeshFamily::good;
    if (s == "bad_boundary") return sdec::MeshFamily::bad_boundary;
    if (s == "non_delaunay") return sdec::MeshFamily::non_delaunay;
    throw sdec::ProblemDefinitionError("unknown mesh family '" + s + "'");
}

sdec::HodgeMode mode_from(const std::string& s)
{
    if (s == "signed") return sdec::HodgeMode::signed_volumes;
    if (s == "unsigned") return sdec::HodgeMode::unsigned_volumes;
    throw sdec::ProblemDefinitionError("unknown hodge mode '" + s + "'");
}

void write_fields(const sdec::ExperimentResult& r, const std::filesystem::path& dir)
{
    const std::string stem = std::string(to_string(r.mode)) + "_" + to_string(r.family);
    std::ofstream v(dir / (stem + "_vertices.csv"));
    v << "x,y,u\n";
    for (std::size_t i = 0; i < r.complex.count(0); ++i) {
        const auto& p = r.complex.points()[i];
        v << format_double(p(0)) << ',' << format_double(p(1)) << ','
          << format_double(r.solution.u.size() ? r.solution.u(static_cast<Eigen::Index>(i)) : 0.0) << '\n';
    }
    std::ofstream e(dir / (stem + "_edges.csv"));
    e << "mx,my,sigma,sx,sy\n";
    // per-edge vector: average of the adjacent triangles' reconstructed fields
    std::vector<Eigen::Vector2d> field(r.complex.count(1), Eigen::Vector2d::Zero());
    std::vector<int> hits(r.complex.count(1), 0);
    for (std::size_t t = 0; t < r.flux_field.size(); ++t)
        for (const auto& f : r.complex.faces(2, t)) {
            field[f.index] += r.flux_field[t];
            ++hits[f.index];
        }
    for (std::size_t k = 0; k < r.complex.count(1); ++k) {
        const auto p = r.complex.vertex_points(1, k);
        const Eigen::Vector2d mid = 0.5 * (p[0] + p[1]).head<2>();
        const Eigen::Vector2d s = hits[k] ? Eigen::Vector2d(field[k] / hits[k]) : Eigen::Vector2d::Zero();
        e << format_double(mid.x()) << ',' << format_double(mid.y()) << ','
          << format_double(r.solution.sigma.size() ? r.solution.sigma(static_cast<Eigen::Index>(k)) : 0.0) << ','
          << format_double(s.x()) << ',' << format_double(s.y()) << '\n';
    }
}

int run_poisson(const std::string& config_path, const std::string& out_dir)
{
    std::ifstream in(config_path);
    if (!in) throw sdec::Error("cannot open " + config_path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw sdec::ParseError(config_path, 0, e.what());
    }
    const sdec::Figure1Config fc = figure_config(cfg);
    std::vector<sdec::ExperimentResult> results;
    if (cfg.value("experiment", std::string("figure1")) == "figure1" && !cfg.contains("family")) {
        results = sdec::figure1_columns(fc);
    } else {
        results.push_back(sdec::figure1_experiment(fc, family_from(cfg.value("family", std::string("good"))),
                                                   mode_from(cfg.value("mode", std::string("signed")))));
    }
    json summary = {{"schema_version", sdec::kReportSchemaVersion}, {"columns", json::array()}};
    for (const auto& r : results) summary["columns"].push_back(sdec::experiment_json(r));
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& r : results) write_fields(r, out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "summary.json") << summary.dump(2) << '\n';
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items)
{
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("params", "expected key=value, got " + item);
        const std::string value = item.substr(eq + 1);
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (value.empty() || *end != '\0')
            throw CLI::ValidationError("params", "value of " + item.substr(0, eq) + " is not a number");
        out[item.substr(0, eq)] = v;
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Signed circumcentric duals and the diagonal Hodge star"};
    app.require_subcommand(1);

    std::string mesh_path, out_path, config_path, fixture_name;
    int p = 0;
    bool unsigned_mode = false, as_json = false;
    std::vector<std::string> params;

    auto* check = app.add_subcommand("check", "Classify a mesh; exit 1 when it is not qualifying");
    check->add_option("mesh", mesh_path, ".node/.ele or .off mesh")->required();
    check->add_flag("--json", as_json, "Print the JSON report");

    auto* duals = app.add_subcommand("duals", "Signed and unsigned dual volumes as CSV");
    duals->add_option("mesh", mesh_path)->required();
    duals->add_option("-p", p, "Primal dimension")->required();
    duals->add_flag("--unsigned", unsigned_mode, "Accepted for symmetry with hodge; both columns are always written");
    duals->add_option("-o,--output", out_path);

    auto* hodge = app.add_subcommand("hodge", "Diagonal Hodge star as CSV");
    hodge->add_option("mesh", mesh_path)->required();
    hodge->add_option("-p", p, "Primal dimension")->required();
    hodge->add_flag("--unsigned", unsigned_mode, "Use unsigned dual volumes");
    hodge->add_option("-o,--output", out_path);

    auto* poisson = app.add_subcommand("poisson", "Run the mixed Poisson experiment from a JSON config");
    poisson->add_option("config", config_path)->required();
    poisson->add_option("-o,--output-dir", out_path, "Directory for CSV fields and summary.json");

    auto* fixture = app.add_subcommand("fixture", "Generate a test mesh");
    fixture->add_option("name", fixture_name)->required()->check(CLI::IsMember(sdec::fixtures::names()));
    fixture->add_option("params", params, "key=value parameters");
    fixture->add_option("-o,--output", out_path, "Output path (.node/.ele or .off)")->required();

    auto* report = app.add_subcommand("report", "Mesh report");
    report->add_option("mesh", mesh_path)->required();
    report->add_flag("--json", as_json, "JSON output (the only format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*fixture) {
            const auto mesh = sdec::fixtures::generate(fixture_name, parse_params(params));
            sdec::write_mesh(mesh, out_path);
            return 0;
        }
        if (*poisson) return run_poisson(config_path, out_path);

        const sdec::MeshData mesh = sdec::read_mesh(mesh_path);
        const sdec::SimplicialComplex cx = mesh.to_complex();

        if (*check || *report) {
            const auto r = sdec::classify_complex(cx);
            if (*report || as_json) std::cout << sdec::report_json(cx, r).dump(2) << '\n';
            else print_text_report(cx, r);
            if (*check) return r.qualifying() ? 0 : kExitNotQualifying;
            return 0;
        }
        check_dim(cx, p);
        const sdec::CircumcentricDual dual(cx);
        Output out(out_path);
        std::ostream& os = out.stream();
        if (*duals) {
            os << "dim,simplex_index,vertices,signed_volume,unsigned_volume,num_pieces,num_negative_pieces\n";
            for (std::size_t i = 0; i < cx.count(p); ++i) {
                const auto cell = dual.dual_cell({p, i});
                os << p << ',' << i << ',' << join(cx.simplex(p, i).vertices) << ','
                   << format_double(cell.signed_volume) << ',' << format_double(cell.unsigned_volume) << ','
                   << cell.pieces.size() << ',' << cell.negative_pieces() << '\n';
            }
        } else {
            const auto star =
                sdec::hodge_star(dual, p, unsigned_mode ? sdec::HodgeMode::unsigned_volumes : sdec::HodgeMode::signed_volumes);
            os << "index,entry\n";
            for (std::size_t i = 0; i < star.entries.size(); ++i) os << i << ',' << format_double(star.entries[i]) << '\n';
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
