// fbms: free boundary minimal surface toolkit.
// Subcommands: constants, catenoid, sweep, spectrum, degree, verify.
// Exit codes: 0 success, 2 usage, 3 numerical non-convergence,
// 4 inconclusive spectral report.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbms/checks.hpp"
#include "fbms/degree.hpp"
#include "fbms/jacobi.hpp"
#include "fbms/manifest.hpp"
#include "fbms/rotprofile.hpp"
#include "fbms/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fbms;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitInconclusive = 4;

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

// Writes a result file plus its manifest and records the digest.
void finalize(const manifest::Config& cfg, const std::string& command,
              const std::map<std::string, std::string>& params,
              const std::vector<std::pair<std::string, std::string>>& outputs,
              double wall_seconds) {
    fs::create_directories(cfg.out_dir);
    manifest::RunManifest m;
    m.command = command;
    m.parameters = params;
    m.wall_seconds = wall_seconds;
    for (const auto& [name, content] : outputs) {
        const fs::path path = cfg.out_dir / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
        out.close();
        m.result_files.push_back(path.string());
        m.digests[name] = manifest::digest_hex(content);
    }
    manifest::write_manifest(m, cfg.out_dir / (command + ".manifest.json"));
}

json catenoid_json(double t, const rotprofile::CatenoidSolution& sol) {
    json j;
    j["t"] = t;
    j["converged"] = sol.converged;
    j["a"] = sol.a;
    j["b"] = sol.b;
    j["theta_plus"] = sol.theta_plus;
    j["theta_minus"] = sol.theta_minus;
    j["iterations"] = sol.iters;
    j["residual_history"] = sol.residual_history;
    json samples = json::array();
    if (sol.converged) {
        const auto& sm = sol.profile.samples;
        const std::size_t stride = std::max<std::size_t>(1, sm.size() / 64);
        for (std::size_t i = 0; i < sm.size(); i += stride)
            samples.push_back({{"s", sm[i].s},
                               {"rho", sm[i].rho},
                               {"drho", sm[i].drho}});
    }
    j["profile_samples"] = samples;
    return j;
}

std::string catenoid_csv(double t, const rotprofile::CatenoidSolution& sol) {
    std::ostringstream os;
    os.precision(17);
    os << "t,converged,a,b,theta_plus,theta_minus,iterations\r\n";
    os << t << ',' << (sol.converged ? 1 : 0) << ',' << sol.a << ',' << sol.b
       << ',' << sol.theta_plus << ',' << sol.theta_minus << ',' << sol.iters
       << "\r\n";
    return os.str();
}

int cmd_constants(const manifest::Config& cfg) {
    Timer timer;
    const auto cc = rotprofile::solve_t0();
    const auto rb = jacobi::riccati_bound_check();
    json j;
    j["t0"] = cc.t0;
    j["r0"] = cc.r0;
    j["margin"] = rb.margin;
    j["r0_gt_t0"] = cc.r0 > cc.t0;
    j["t0_gt_1"] = cc.t0 > 1.0;
    j["margin_positive"] = rb.margin > 0.0;
    const std::string body = j.dump(2) + "\n";
    std::cout << body;
    finalize(cfg, "constants", {}, {{"constants.json", body}}, timer.seconds());
    return kExitOk;
}

int cmd_catenoid(const manifest::Config& cfg, double t,
                 const std::string& format, std::string out_name) {
    Timer timer;
    rotprofile::SolverOptions opts;
    opts.tol = cfg.newton_tol;
    opts.ode_step = cfg.ode_step;
    const auto sol = rotprofile::solve_critical_catenoid(t, opts);
    if (out_name.empty())
        out_name = format == "csv" ? "catenoid.csv" : "catenoid.json";
    const std::string body = format == "csv"
                                 ? catenoid_csv(t, sol)
                                 : catenoid_json(t, sol).dump(2) + "\n";
    std::cout << body;
    finalize(cfg, "catenoid",
             {{"t", std::to_string(t)}, {"format", format}},
             {{out_name, body}}, timer.seconds());
    return sol.converged ? kExitOk : kExitNoConvergence;
}

int cmd_sweep(const manifest::Config& cfg, double t_min, double t_max,
              int steps) {
    if (steps < 1 || t_max < t_min) {
        std::cerr << "sweep: invalid grid\n";
        return kExitUsage;
    }
    Timer timer;
    rotprofile::SolverOptions opts;
    opts.tol = cfg.newton_tol;
    opts.ode_step = cfg.ode_step;
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i)
        grid.push_back(steps == 1 ? t_min
                                  : t_min + (t_max - t_min) * i / (steps - 1));
    const auto rows = rotprofile::sweep(grid, opts);
    std::ostringstream os;
    os.precision(17);
    os << "t,converged,a,b,theta_plus,theta_minus,iterations\r\n";
    bool any_failed = false;
    for (const auto& row : rows) {
        os << row.t << ',' << (row.converged ? 1 : 0) << ',' << row.a << ','
           << row.b << ',' << row.theta_plus << ',' << row.theta_minus << ','
           << row.iters << "\r\n";
        if (!row.converged) any_failed = true;
    }
    const std::string body = os.str();
    std::cout << body;
    finalize(cfg, "sweep",
             {{"t_min", std::to_string(t_min)},
              {"t_max", std::to_string(t_max)},
              {"steps", std::to_string(steps)}},
             {{"sweep.csv", body}}, timer.seconds());
    return any_failed ? kExitNoConvergence : kExitOk;
}

int cmd_spectrum(const manifest::Config& cfg, const std::string& surface_name) {
    Timer timer;
    const auto surface = surface_name == "disk" ? jacobi::Surface::Disk
                                                : jacobi::Surface::Catenoid;
    const auto counts =
        spectrum::nullity_and_index(surface, cfg.levels, cfg.zero_tol_factor);
    // stability across the two finest levels decides conclusiveness
    bool conclusive = true;
    if (cfg.levels.size() >= 2) {
        const auto prev = spectrum::nullity_and_index(
            surface, {cfg.levels[cfg.levels.size() - 2]}, cfg.zero_tol_factor);
        conclusive = prev.nullity == counts.nullity && prev.index == counts.index;
    }
    json j;
    j["surface"] = surface_name;
    j["nullity"] = counts.nullity;
    j["index"] = counts.index;
    j["zero_tol"] = counts.zero_tol;
    j["smallest_abs_eigenvalue"] = counts.smallest_abs_eigenvalue;
    j["modes_scanned"] = counts.modes_scanned;
    j["conclusive"] = conclusive;
    json table = json::array();
    for (int n = 0; n < counts.modes_scanned; ++n) {
        const auto track = spectrum::track_eigenvalue(surface, n, 0, cfg.levels);
        json row;
        row["n"] = n;
        row["levels"] = cfg.levels;
        row["lowest_eigenvalue"] = track.values;
        row["richardson"] = track.richardson;
        row["observed_order"] = track.observed_order;
        table.push_back(row);
    }
    j["refinement_table"] = table;
    const std::string body = j.dump(2) + "\n";
    std::cout << body;
    finalize(cfg, "spectrum", {{"surface", surface_name}},
             {{"spectrum_" + surface_name + ".json", body}}, timer.seconds());
    return conclusive ? kExitOk : kExitInconclusive;
}

int cmd_degree(const manifest::Config& cfg, const std::string& topology_name) {
    Timer timer;
    degree::Topology topo = degree::Topology::Other;
    int index = 0;
    if (topology_name == "disk") {
        topo = degree::Topology::Disk;
        index = spectrum::nullity_and_index(jacobi::Surface::Disk, cfg.levels,
                                            cfg.zero_tol_factor)
                    .index;
    } else if (topology_name == "annulus") {
        topo = degree::Topology::Annulus;
        index = spectrum::nullity_and_index(jacobi::Surface::Catenoid,
                                            cfg.levels, cfg.zero_tol_factor)
                    .index;
    }
    const auto ledger = degree::assemble_degree(topo, index);
    json j;
    j["topology"] = degree::topology_name(topo);
    j["total"] = ledger.total;
    json families = json::array();
    for (const auto& fam : ledger.families)
        families.push_back({{"manifold", degree::manifold_name(fam.manifold)},
                            {"index", fam.index},
                            {"euler", fam.euler},
                            {"contribution", fam.contribution}});
    j["families"] = families;
    const std::string body = j.dump(2) + "\n";
    std::cout << body;
    finalize(cfg, "degree", {{"topology", topology_name}},
             {{"degree_" + topology_name + ".json", body}}, timer.seconds());
    return kExitOk;
}

int cmd_verify(const manifest::Config& cfg, const std::string& suite) {
    Timer timer;
    const auto results =
        suite == "fast" ? checks::fast_suite() : checks::acceptance_suite();
    json j;
    json items = json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.name << " ("
                  << r.detail << ")\n";
        items.push_back(
            {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all_ok = all_ok && r.passed;
    }
    j["suite"] = suite;
    j["checks"] = items;
    j["all_passed"] = all_ok;
    const std::string body = j.dump(2) + "\n";
    finalize(cfg, "verify", {{"suite", suite}},
             {{"verify_" + suite + ".json", body}}, timer.seconds());
    std::cout << (all_ok ? "OK" : "FAILED") << "\n";
    return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free boundary minimal surface toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    auto* constants = app.add_subcommand("constants", "critical constants");

    auto* catenoid = app.add_subcommand("catenoid", "solve the critical catenoid");
    double cat_t = 0.0;
    std::string cat_format = "json", cat_out;
    catenoid->add_option("--t", cat_t, "metric parameter")->required();
    catenoid->add_option("--format", cat_format)
        ->check(CLI::IsMember({"json", "csv"}));
    catenoid->add_option("--out", cat_out, "output file name");

    auto* sweep = app.add_subcommand("sweep", "continuation sweep in t");
    double t_min = 0.0, t_max = 0.3;
    int steps = 7;
    sweep->add_option("--t-min", t_min)->required();
    sweep->add_option("--t-max", t_max)->required();
    sweep->add_option("--steps", steps)->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "nullity and index");
    std::string surface = "disk";
    spectrum_cmd->add_option("--surface", surface)
        ->required()
        ->check(CLI::IsMember({"disk", "catenoid"}));

    auto* degree_cmd = app.add_subcommand("degree", "degree ledger");
    std::string topology = "disk";
    degree_cmd->add_option("--topology", topology)
        ->required()
        ->check(CLI::IsMember({"disk", "annulus", "other"}));

    auto* verify = app.add_subcommand("verify", "invariant suites");
    std::string suite = "fast";
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "fast"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const manifest::Config cfg = config_path.empty()
                                         ? manifest::default_config()
                                         : manifest::load_config(config_path);
        if (constants->parsed()) return cmd_constants(cfg);
        if (catenoid->parsed())
            return cmd_catenoid(cfg, cat_t, cat_format, cat_out);
        if (sweep->parsed()) return cmd_sweep(cfg, t_min, t_max, steps);
        if (spectrum_cmd->parsed()) return cmd_spectrum(cfg, surface);
        if (degree_cmd->parsed()) return cmd_degree(cfg, topology);
        if (verify->parsed()) return cmd_verify(cfg, suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
    return kExitUsage;
}
