// Command-line front end: runs simulations, experiments, and covering
// analyses from declarative configs, and recomputes diagnostics offline.
//
// Exit codes: 0 ok/pass, 1 usage or config error, 2 experiment fail,
// 3 inconclusive, 4 numerical abort.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpe/config.hpp"
#include "mpe/covering.hpp"
#include "mpe/energy.hpp"
#include "mpe/errors.hpp"
#include "mpe/experiments.hpp"
#include "mpe/forcing.hpp"
#include "mpe/snapshot.hpp"
#include "mpe/stepper.hpp"

namespace {

struct GlobalOpts {
    std::string out;
    int threads = 1;
    std::optional<std::uint64_t> seed;
    bool verbose = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mpe::IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

mpe::RunConfig load_config(const std::string& path, const GlobalOpts& o) {
    mpe::RunConfig c = mpe::parse_config(read_file(path));
    if (o.seed) c.seed = *o.seed;
    if (!o.out.empty()) c.output.directory = o.out;
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mpe::IoError("cannot open " + path + " for writing");
    out << text;
}

int cmd_run(const std::string& cfg_path, const GlobalOpts& o) {
    const mpe::RunConfig c = load_config(cfg_path, o);
    const mpe::Grid g = c.grid();
    const std::string dir = c.output.directory;
    std::filesystem::create_directories(dir);

    write_text(dir + "/config.ini", mpe::serialize_config(c));
    write_text(dir + "/fingerprint.txt", mpe::fingerprint_hex(c) + "\n");
    if (o.verbose)
        std::printf("[mpe][run] config %s fingerprint %s grid %dx%dx%d\n",
                    cfg_path.c_str(), mpe::fingerprint_hex(c).c_str(), c.nx, c.ny,
                    c.nz);

    mpe::TimeStepper ts(c.params, g, c.stepping);
    mpe::State s0 = mpe::random_state(c.seed, 0.3, 0.3, 0.3, c.params, g);

    std::ofstream energy;
    if (c.output.energy) {
        energy.open(dir + "/energy.csv", std::ios::binary);
        if (!energy) throw mpe::IoError("cannot open " + dir + "/energy.csv");
        energy << mpe::EnergyReport::csv_header() << '\n';
    }

    std::optional<mpe::State> prev;
    const mpe::RunResult rr = ts.run(s0, [&](const mpe::State& s, long step) {
        if (c.output.energy) {
            const mpe::EnergyReport r =
                mpe::report(s, prev ? &*prev : nullptr, c.params, g,
                            &ts.forcing_q1(), &ts.forcing_q2());
            energy << r.csv_row() << '\n';
        }
        if (c.output.snapshots) {
            char name[32];
            std::snprintf(name, sizeof(name), "/snap_%06ld.bin", step);
            mpe::save_snapshot(s, g, dir + name);
        }
        prev = s;
        if (o.verbose) std::printf("[mpe][run] t = %.6g (step %ld)\n", s.time, step);
    });
    mpe::save_snapshot(rr.final, g, dir + "/final.bin");

    std::printf("[mpe][run] done: %ld steps, %.3f s wall, %ld helmholtz iters, "
                "%ld projection iters, output in %s\n",
                rr.steps, rr.wall_seconds, rr.helmholtz_iters, rr.projection_iters,
                dir.c_str());
    return 0;
}

int cmd_experiment(const std::string& name, const std::string& cfg_path,
                   const GlobalOpts& o) {
    const mpe::RunConfig c = load_config(cfg_path, o);
    mpe::set_ensemble_threads(o.threads);
    if (o.verbose)
        std::printf("[mpe][exp] %s on %dx%dx%d, seed %llu\n", name.c_str(), c.nx,
                    c.ny, c.nz, static_cast<unsigned long long>(c.seed));

    const mpe::ExperimentResult r = mpe::run_experiment(name, c);
    mpe::write_result(r, c.output.directory);
    std::printf("[mpe][exp] %s: %s (%s)\n", r.name.c_str(),
                mpe::verdict_name(r.verdict), r.detail.c_str());
    return mpe::verdict_exit_code(r.verdict);
}

int cmd_covering(const std::string& cfg_path, const GlobalOpts& o) {
    const mpe::RunConfig c = load_config(cfg_path, o);

    // fixed analysis recipe: 16 snapshots 5 steps apart after the configured
    // warmup horizon, theta = 1/4, two levels, map horizon 0.5 time units
    const int n_points = 16;
    const long stride = 5;
    const double theta = 0.25;
    const int k_max = 2;
    const double t_map = 0.5;
    if (o.verbose)
        std::printf("[mpe][cov] sampling %d points (stride %ld) after t = %.3g\n",
                    n_points, stride, c.stepping.t_end);

    const mpe::CoveringAnalysis a =
        mpe::analyze_reduced_map(c, n_points, stride, theta, k_max, t_map);
    const std::string manifest = mpe::covering_manifest(a.tree, a.smoothing, a.dim);
    std::filesystem::create_directories(c.output.directory);
    write_text(c.output.directory + "/covering.txt", manifest);

    std::printf("[mpe][cov] n_theta = %ld, dim bound = %.4g%s, smoothing K = %.4g "
                "(%ld pairs)\n",
                a.tree.n_theta, a.dim.value, a.dim.degenerate ? " (degenerate)" : "",
                a.smoothing.K, a.smoothing.pairs_used);
    return 0;
}

int cmd_diag(const std::vector<std::string>& paths, const GlobalOpts& o) {
    const mpe::PhysParams params; // defaults; snapshots carry no parameters
    std::ostringstream out;
    out << "# norms recomputed offline with default physical parameters\n";
    out << mpe::EnergyReport::csv_header() << '\n';

    std::optional<std::pair<mpe::State, mpe::Grid>> prev;
    for (const auto& path : paths) {
        auto [s, g] = mpe::load_snapshot(path);
        const mpe::State* p_prev = nullptr;
        if (prev && prev->second.nx == g.nx && prev->second.ny == g.ny &&
            prev->second.nz == g.nz && prev->first.time < s.time)
            p_prev = &prev->first;
        const mpe::EnergyReport r = mpe::report(s, p_prev, params, g);
        out << r.csv_row() << '\n';
        if (o.verbose)
            std::printf("[mpe][diag] %s: t = %.6g, |v|_2 = %.6g\n", path.c_str(),
                        r.time, r.l2_v);
        prev.emplace(std::move(s), g);
    }

    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        write_text(o.out + "/diag.csv", out.str());
        std::printf("[mpe][diag] wrote %s/diag.csv (%zu snapshots)\n", o.out.c_str(),
                    paths.size());
    } else {
        std::fputs(out.str().c_str(), stdout);
    }
    return 0;
}

int cmd_mms(const std::string& cfg_path, const GlobalOpts& o) {
    const mpe::RunConfig c = load_config(cfg_path, o);
    if (o.verbose) std::puts("[mpe][mms] running refinement ladders");
    const mpe::ExperimentResult r = mpe::exp_manufactured(c);
    mpe::write_result(r, c.output.directory);
    std::printf("[mpe][mms] %s (%s)\n", mpe::verdict_name(r.verdict),
                r.detail.c_str());
    return mpe::verdict_exit_code(r.verdict);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"viscous primitive-equation simulator and verification harness"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");
    app.add_option("--out", opts.out, "override the output directory");
    app.add_option("--threads", opts.threads, "ensemble concurrency cap")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verbose", opts.verbose, "progress logging");

    std::string cfg_run, cfg_exp, cfg_cov, cfg_mms, exp_name;
    std::vector<std::string> diag_paths;

    auto* sc_run = app.add_subcommand("run", "integrate a configured simulation");
    sc_run->add_option("config", cfg_run, "INI config file")->required();

    auto* sc_exp = app.add_subcommand("experiment", "run a named experiment");
    sc_exp->add_option("name", exp_name,
                       "decay | absorbing | smoothing | time_regularity | mms")
        ->required();
    sc_exp->add_option("config", cfg_exp, "INI config file")->required();

    auto* sc_cov = app.add_subcommand("covering", "reduced-map covering analysis");
    sc_cov->add_option("config", cfg_cov, "INI config file")->required();

    auto* sc_diag = app.add_subcommand("diag", "recompute energy reports offline");
    sc_diag->add_option("snapshots", diag_paths, "snapshot files in time order")
        ->required();

    auto* sc_mms = app.add_subcommand("mms", "manufactured-solution ladder");
    sc_mms->add_option("config", cfg_mms, "INI config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (*seed_opt) opts.seed = seed_value;

    try {
        if (*sc_run) return cmd_run(cfg_run, opts);
        if (*sc_exp) return cmd_experiment(exp_name, cfg_exp, opts);
        if (*sc_cov) return cmd_covering(cfg_cov, opts);
        if (*sc_diag) return cmd_diag(diag_paths, opts);
        if (*sc_mms) return cmd_mms(cfg_mms, opts);
    } catch (const mpe::ConfigError& e) {
        std::fprintf(stderr, "[mpe][config] %s\n", e.what());
        return 1;
    } catch (const mpe::IoError& e) {
        std::fprintf(stderr, "[mpe][io] %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "[mpe][config] %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "[mpe][abort] %s\n", e.what());
        return 4;
    }
    return 1;
}
