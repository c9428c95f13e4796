#include "auvpf/config.hpp"
#include "auvpf/sim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

// Exit codes: 0 success, 1 config error, 2 runtime abort, 3 plan not completed.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeAbort = 2;
constexpr int kNotCompleted = 3;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void print_summary(const auvpf::RunResult& r) {
    const auto& m = r.metrics;
    std::cout << "completed: " << (m.completed ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < m.waypoint_hit_times.size(); ++i) {
        std::cout << "waypoint " << i << " hit: ";
        if (m.waypoint_hit_times[i]) std::cout << *m.waypoint_hit_times[i] << " s\n";
        else std::cout << "-\n";
    }
    std::cout << "mean surge: " << m.mean_surge << " m/s (std " << m.surge_std << ")\n"
              << "roll |mean|/|max|: " << m.mean_abs_roll_deg << " / " << m.max_abs_roll_deg
              << " deg\n"
              << "max |tau|: " << m.max_abs_tau << " N\n"
              << "log rows: " << r.log.rows.size() << "\n";
    if (r.aborted) std::cout << "aborted: " << r.abort_reason << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D waypoint path following for a coupled 6-DOF AUV: LOS guidance + minimax MPC"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<double> rho_c_values;

    auto* run = app.add_subcommand("run", "Run the closed-loop scenario");
    run->add_option("--config", config_path, "Scenario config (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--out", out_dir, "Directory for log + metrics files");
    run->add_option("--format", format, "Log format")->check(CLI::IsMember({"csv", "json"}));

    auto* sweep = app.add_subcommand("sweep", "Run once per rho_c value (identical seeds)");
    sweep->add_option("--config", config_path, "Scenario config (JSON)")->required();
    sweep->add_option("--rho-c", rho_c_values, "Ascending rho_c values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", out_dir, "Directory for the sweep table");

    auto* validate = app.add_subcommand("validate", "Validate a config and exit");
    validate->add_option("--config", config_path, "Scenario config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        auvpf::ScenarioConfig cfg = auvpf::load_config(config_path);

        if (validate->parsed()) {
            std::cout << "config ok: " << config_path << "\n";
            return kOk;
        }

        if (run->parsed()) {
            if (seed_set) cfg.seed = seed;
            const auvpf::RunResult r = auvpf::run_simulation(cfg);
            print_summary(r);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                const auto dir = std::filesystem::path(out_dir);
                auvpf::write_log(r.log, (dir / ("log." + format)).string(), format);
                write_text(dir / "metrics.json", auvpf::metrics_to_json(r.metrics).dump(2) + "\n");
            }
            if (r.aborted) return kRuntimeAbort;
            return r.metrics.completed ? kOk : kNotCompleted;
        }

        // sweep
        const auto table = auvpf::sweep_rho_c(cfg, rho_c_values);
        std::ostringstream csv;
        csv << "rho_c,mean_surge,completed\n";
        for (const auto& row : table)
            csv << row.rho_c << "," << row.mean_surge << "," << (row.completed ? 1 : 0) << "\n";
        std::cout << csv.str();
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            write_text(std::filesystem::path(out_dir) / "sweep.csv", csv.str());
        }
        for (const auto& row : table)
            if (!row.completed) return kNotCompleted;
        return kOk;
    } catch (const auvpf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeAbort;
    }
}
