/*
Copyright 2026 The vartri Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// vartri command line. Reports are JSON on stdout (or --output).
// Exit status: 0 success, 1 error or failed check, 2 infeasible target.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vartri.hpp"
#include "vartri/io.hpp"

namespace
{

using vartri::io::Json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

struct Output {
    std::string path;

    void write(const Json& j) const
    {
        const std::string text = j.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) {
            throw vartri::io::FormatError("cannot write " + path);
        }
        out << text;
    }
};

vartri::Geometry geometry_arg(const std::string& name)
{
    const auto g = vartri::parse_geometry(name);
    if (!g) {
        throw vartri::io::FormatError("unknown geometry \"" + name + "\"");
    }
    return *g;
}

int run_check(const Output& out, const std::string& mesh_path, const std::string& metric_path)
{
    const auto s = vartri::io::mesh_from_json(vartri::io::read_json(mesh_path));
    Json degrees = Json::object();
    for (int v = 0; v < s.vertex_count(); ++v) {
        degrees[vartri::io::vertex_key(v)] = s.degree(v);
    }
    Json edges = Json::array();
    for (int e = 0; e < s.edge_count(); ++e) {
        edges.push_back(s.edge_label(e));
    }
    Json rep{{"vertices", s.vertex_count()},
             {"edges", s.edge_count()},
             {"triangles", s.triangle_count()},
             {"euler_characteristic", s.euler_characteristic()},
             {"mode", s.mode() == vartri::SurfaceMode::Closed ? "closed" : "bordered"},
             {"closed", s.is_closed()},
             {"degrees", degrees},
             {"edge_labels", edges}};
    if (!metric_path.empty()) {
        const auto m = vartri::io::metric_from_json(s, vartri::io::read_json(metric_path));
        rep["metric"] = {{"geometry", vartri::to_string(m.geometry)}, {"valid", true}};
        if (s.is_closed()) {
            const auto flags = vartri::is_delaunay(s, m);
            Json d = Json::object();
            for (int e = 0; e < s.edge_count(); ++e) {
                d[s.edge_label(e)] = static_cast<bool>(flags[e]);
            }
            rep["metric"]["delaunay"] = d;
        }
    }
    out.write(rep);
    return kOk;
}

int run_curvature(const Output& out,
                  const std::string& kind,
                  double h,
                  const std::string& normalization,
                  const std::string& mesh_path,
                  const std::string& metric_path)
{
    const auto s = vartri::io::mesh_from_json(vartri::io::read_json(mesh_path));
    const Json mj = vartri::io::read_json(metric_path);
    if (kind == "psi" && !mj.contains("geometry") && s.mode() == vartri::SurfaceMode::Bordered) {
        const vartri::IdealSurface is(s);
        const auto hm = vartri::io::hexagon_metric_from_json(is, mj);
        Json rep = vartri::io::curvature_to_json(s, vartri::hexagon_psi_curvature(is, hm, h));
        rep["geometry"] = "hexagon";
        out.write(rep);
        return kOk;
    }
    const auto m = vartri::io::metric_from_json(s, mj);
    vartri::CurvatureVector k;
    if (kind == "k") {
        k = h == 0.0 ? vartri::k0_curvature(s, m) : vartri::kh_curvature(s, m, h);
    } else if (kind == "phi") {
        if (normalization != "integral" && normalization != "dihedral") {
            throw vartri::io::FormatError("normalization must be integral or dihedral");
        }
        k = vartri::phi_curvature(s, m, h,
                                  normalization == "dihedral" ? vartri::PhiNormalization::Dihedral
                                                              : vartri::PhiNormalization::Integral);
    } else if (kind == "psi") {
        k = vartri::psi_curvature(s, m, h);
    } else {
        throw vartri::io::FormatError("kind must be k, phi or psi");
    }
    Json rep = vartri::io::curvature_to_json(s, k);
    rep["geometry"] = vartri::to_string(m.geometry);
    out.write(rep);
    return kOk;
}

int status_code(const vartri::SolveReport& r)
{
    switch (r.status) {
        case vartri::SolveStatus::Converged: return kOk;
        case vartri::SolveStatus::Diverged: return kInfeasible;
        default: return kError;
    }
}

vartri::SolverConfig solver_config(int max_iter, double tol)
{
    vartri::SolverConfig cfg;
    cfg.max_iterations = max_iter;
    cfg.gradient_tolerance = tol;
    return cfg;
}

int run_pack(const Output& out,
             const std::string& geometry,
             double h,
             const std::string& target_path,
             const std::string& mesh_path,
             const std::string& initial_path,
             int max_iter,
             double tol)
{
    const auto s = vartri::io::mesh_from_json(vartri::io::read_json(mesh_path));
    const auto g = geometry_arg(geometry);
    if (g == vartri::Geometry::Spherical) {
        throw vartri::DomainError("pack requires euclidean or hyperbolic geometry");
    }
    const auto target = vartri::io::keyed_values(s, vartri::io::read_json(target_path), false);
    auto cfg = solver_config(max_iter, tol);
    if (!initial_path.empty()) {
        const Json ij = vartri::io::read_json(initial_path);
        cfg.initial = vartri::io::keyed_values(s, ij.contains("radii") ? ij.at("radii") : ij, false);
    }
    const auto rep = vartri::solve_circle_packing(s, g, target, h, cfg);
    Json j = vartri::io::report_to_json(s, rep, false);
    j["geometry"] = vartri::to_string(g);
    j["h"] = h;
    out.write(j);
    return status_code(rep);
}

int run_teich(const Output& out,
              double h,
              const std::string& target_path,
              const std::string& metric_path,
              const std::string& mesh_path,
              int max_iter,
              double tol)
{
    const auto s = vartri::io::mesh_from_json(vartri::io::read_json(mesh_path));
    const vartri::IdealSurface is(s);
    if (target_path.empty() == metric_path.empty()) {
        throw vartri::io::FormatError("teich needs exactly one of --target (solve) or --metric (measure)");
    }
    if (!metric_path.empty()) {
        const auto hm = vartri::io::hexagon_metric_from_json(is, vartri::io::read_json(metric_path));
        Json rep = vartri::io::curvature_to_json(s, vartri::hexagon_psi_curvature(is, hm, h));
        Json bl = Json::object();
        const auto lengths = vartri::boundary_lengths(is, hm);
        for (std::size_t b = 0; b < lengths.size(); ++b) {
            bl[vartri::io::vertex_key(static_cast<int>(b))] = lengths[b];
        }
        rep["boundary_lengths"] = bl;
        out.write(rep);
        return kOk;
    }
    const auto target = vartri::io::keyed_values(s, vartri::io::read_json(target_path), true);
    const auto rep = vartri::solve_hexagon_metric(is, target, h, solver_config(max_iter, tol));
    Json j = vartri::io::report_to_json(s, rep, true);
    j["h"] = h;
    out.write(j);
    return status_code(rep);
}

int run_feasible(const Output& out,
                 const std::string& geometry,
                 bool sampling,
                 std::size_t samples,
                 std::uint64_t seed,
                 const std::string& mesh_path,
                 const std::string& target_path)
{
    const auto s = vartri::io::mesh_from_json(vartri::io::read_json(mesh_path));
    const auto target = vartri::io::keyed_values(s, vartri::io::read_json(target_path), false);
    vartri::FeasibilityOptions opt;
    opt.sampling = sampling;
    opt.samples = samples;
    opt.seed = seed;
    const auto v = vartri::feasibility_check(s, geometry_arg(geometry), target, opt);
    Json j = vartri::io::verdict_to_json(v);
    j["geometry"] = geometry;
    out.write(j);
    return v.feasible ? kOk : kInfeasible;
}

int run_verify(const Output& out, const std::string& suite, std::uint64_t seed)
{
    vartri::SuiteOptions opt;
    opt.seed = seed;
    const auto rep = vartri::run_suite(suite, opt);
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj{{"name", c.name}, {"tolerance", c.tolerance}, {"passed", c.passed}};
        cj["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
        if (!c.detail.empty()) {
            cj["detail"] = c.detail;
        }
        checks.push_back(cj);
    }
    out.write({{"suite", rep.suite}, {"seed", seed}, {"passed", rep.passed()}, {"checks", checks}});
    return rep.passed() ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete curvatures, variational energies and prescribed-curvature solvers on triangulated surfaces"};
    app.require_subcommand(1);
    // --h is the family parameter, so help is long-form only
    app.set_help_flag("--help", "Print this help message and exit");
    Output out;
    app.add_option("-o,--output", out.path, "Write the JSON report here instead of stdout");

    std::string mesh, metric, target, initial, kind = "k", geometry = "hyperbolic", normalization = "integral", suite;
    double h = 0.0, tol = vartri::SolverConfig{}.gradient_tolerance;
    int max_iter = vartri::SolverConfig{}.max_iterations;
    bool sampling = false;
    std::size_t samples = vartri::FeasibilityOptions{}.samples;
    std::uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "Validate a mesh and optionally a metric on it");
    check->add_option("mesh", mesh, "Mesh JSON")->required()->check(CLI::ExistingFile);
    check->add_option("metric", metric, "Metric JSON")->check(CLI::ExistingFile);

    auto* curv = app.add_subcommand("curvature", "Discrete curvature of a metric");
    curv->add_option("--kind", kind, "k, phi or psi")->check(CLI::IsMember({"k", "phi", "psi"}));
    curv->add_option("--h", h, "Family parameter");
    curv->add_option("--normalization", normalization, "phi constant: integral or dihedral")
        ->check(CLI::IsMember({"integral", "dihedral"}));
    curv->add_option("mesh", mesh, "Mesh JSON")->required()->check(CLI::ExistingFile);
    curv->add_option("metric", metric, "Metric JSON")->required()->check(CLI::ExistingFile);

    auto* pack = app.add_subcommand("pack", "Circle packing with prescribed k_h");
    pack->add_option("--geometry", geometry, "euclidean or hyperbolic");
    pack->add_option("--h", h, "Family parameter");
    pack->add_option("--target", target, "Target curvature JSON")->required()->check(CLI::ExistingFile);
    pack->add_option("--initial", initial, "Initial radii JSON")->check(CLI::ExistingFile);
    pack->add_option("--max-iter", max_iter, "Newton iteration cap");
    pack->add_option("--tolerance", tol, "Curvature residual tolerance");
    pack->add_option("mesh", mesh, "Mesh JSON")->required()->check(CLI::ExistingFile);

    auto* teich = app.add_subcommand("teich", "Hexagon metric with prescribed psi_h, or psi_h of a hexagon metric");
    teich->add_option("--h", h, "Family parameter");
    teich->add_option("--target", target, "Target psi_h JSON (solve)")->check(CLI::ExistingFile);
    teich->add_option("--metric", metric, "Hexagon edge lengths JSON (measure)")->check(CLI::ExistingFile);
    teich->add_option("--max-iter", max_iter, "Newton iteration cap");
    teich->add_option("--tolerance", tol, "Curvature residual tolerance");
    teich->add_option("mesh", mesh, "Bordered mesh JSON")->required()->check(CLI::ExistingFile);

    auto* feas = app.add_subcommand("feasible", "Check k_0 targets against the packing inequalities");
    feas->add_option("--geometry", geometry, "euclidean or hyperbolic");
    feas->add_flag("--sample", sampling, "Sample subsets when there are too many vertices to enumerate");
    feas->add_option("--samples", samples, "Number of sampled subsets");
    feas->add_option("--seed", seed, "Sampling seed");
    feas->add_option("mesh", mesh, "Mesh JSON")->required()->check(CLI::ExistingFile);
    feas->add_option("targets", target, "Target curvature JSON")->required()->check(CLI::ExistingFile);

    auto* ver = app.add_subcommand("verify", "Run a self-check suite");
    ver->add_option("suite", suite, "laws, closedness, convexity or gaussbonnet")
        ->required()
        ->check(CLI::IsMember({"laws", "closedness", "convexity", "gaussbonnet"}));
    ver->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kError;
    }

    try {
        if (*check) {
            return run_check(out, mesh, metric);
        }
        if (*curv) {
            return run_curvature(out, kind, h, normalization, mesh, metric);
        }
        if (*pack) {
            return run_pack(out, geometry, h, target, mesh, initial, max_iter, tol);
        }
        if (*teich) {
            return run_teich(out, h, target, metric, mesh, max_iter, tol);
        }
        if (*feas) {
            return run_feasible(out, geometry, sampling, samples, seed, mesh, target);
        }
        if (*ver) {
            return run_verify(out, suite, seed);
        }
    } catch (const vartri::InfeasibleError& e) {
        std::cout << vartri::io::error_json("infeasible", e.what()).dump(2) << "\n";
        return kInfeasible;
    } catch (const vartri::MeshError& e) {
        std::cout << vartri::io::error_json("mesh", e.what()).dump(2) << "\n";
    } catch (const vartri::DomainError& e) {
        std::cout << vartri::io::error_json("domain", e.what()).dump(2) << "\n";
    } catch (const vartri::io::FormatError& e) {
        std::cout << vartri::io::error_json("format", e.what()).dump(2) << "\n";
    } catch (const std::exception& e) {
        std::cout << vartri::io::error_json("internal", e.what()).dump(2) << "\n";
    }
    return kError;
}
