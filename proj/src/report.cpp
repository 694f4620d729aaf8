#include "sdec/report.hpp"

namespace sdec {
namespace {

nlohmann::json vertices(const SimplicialComplex& complex, int p, std::size_t i)
{
    return complex.simplex(p, i).vertices;
}

} // namespace

nlohmann::json report_json(const SimplicialComplex& complex, const MeshReport& report)
{
    using nlohmann::json;
    const int n = report.dim;
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["dim"] = report.dim;
    j["ambient_dim"] = report.ambient_dim;
    j["counts"] = report.counts;
    j["pairwise_delaunay"] = report.pairwise_delaunay();
    j["one_sided"] = report.one_sided();
    j["qualifying"] = report.qualifying();

    j["pairs"] = {{"total", report.pairs.size()},
                  {"strict", report.count_pairs(PairStatus::strict)},
                  {"degenerate", report.count_pairs(PairStatus::degenerate)},
                  {"violated", report.count_pairs(PairStatus::violated)}};
    json bad_pairs = json::array();
    for (const PairFinding& f : report.pairs)
        if (f.status != PairStatus::strict)
            bad_pairs.push_back({{"facet", f.facet},
                                 {"vertices", vertices(complex, n - 1, f.facet)},
                                 {"tops", f.tops},
                                 {"status", to_string(f.status)}});
    j["pairs"]["findings"] = bad_pairs;

    j["boundary"] = {{"total", report.boundary.size()},
                     {"one_sided", report.count_boundary(OneSided::yes)},
                     {"marginal", report.count_boundary(OneSided::marginal)},
                     {"not_one_sided", report.count_boundary(OneSided::no)}};
    json bad_boundary = json::array();
    for (const BoundaryFinding& f : report.boundary)
        if (f.status != OneSided::yes)
            bad_boundary.push_back({{"facet", f.facet},
                                    {"vertices", vertices(complex, n - 1, f.facet)},
                                    {"top", f.top},
                                    {"status", to_string(f.status)}});
    j["boundary"]["findings"] = bad_boundary;

    json by_dim = json::array();
    for (int p = 0; p <= n; ++p) by_dim.push_back(0);
    json duals = json::array();
    for (const NonpositiveDual& d : report.nonpositive_duals) {
        by_dim[static_cast<std::size_t>(d.dim)] = by_dim[static_cast<std::size_t>(d.dim)].get<int>() + 1;
        duals.push_back({{"dim", d.dim},
                         {"simplex", d.simplex},
                         {"vertices", vertices(complex, d.dim, d.simplex)},
                         {"signed_volume", d.signed_volume}});
    }
    j["nonpositive_duals"] = {{"by_dim", by_dim}, {"findings", duals}};
    j["notes"] = report.notes;
    return j;
}

nlohmann::json experiment_json(const ExperimentResult& r)
{
    return {{"schema_version", kReportSchemaVersion},
            {"label", r.label()},
            {"family", to_string(r.family)},
            {"mode", to_string(r.mode)},
            {"vertices", r.complex.count(0)},
            {"edges", r.complex.count(1)},
            {"triangles", r.complex.count(2)},
            {"obtuse_angles", r.obtuse_triangles},
            {"violated_pairs", r.report.count_pairs(PairStatus::violated)},
            {"not_one_sided_boundary", r.report.count_boundary(OneSided::no)},
            {"hodge0_nonpositive", r.hodge0_nonpositive.size()},
            {"hodge1_nonpositive", r.hodge1_nonpositive.size()},
            {"solved", r.solution.solved},
            {"diagnostics", r.solution.diagnostics},
            {"residual_norm", r.solution.residual_norm},
            {"u_error", r.u_error},
            {"analytic_error", r.analytic_error},
            {"sigma_error", r.sigma_error},
            {"seconds", r.seconds}};
}

} // namespace sdec
