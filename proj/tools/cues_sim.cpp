// cues-sim: run, check and summarize scenarios.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cues/error.hpp"
#include "cues/run_log.hpp"
#include "cues/scenario.hpp"
#include "cues/simulation.hpp"

namespace {

constexpr const char* kOutEnv = "CUES_SIM_OUT_DIR";

std::filesystem::path resolve_out_dir(const std::string& flag, const cues::Scenario& sc) {
    if (!flag.empty()) return flag;
    if (!sc.run.output_dir.empty()) return sc.run.output_dir;
    const std::string base = std::getenv(kOutEnv) ? std::getenv(kOutEnv) : "runs";
    return std::filesystem::path(base) / (sc.name + "-seed" + std::to_string(sc.run.seed));
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

int cmd_simulate(const std::string& file, std::optional<std::uint64_t> seed, std::optional<double> duration,
                 const std::string& out, const std::string& formats) {
    cues::Scenario sc = cues::load_scenario(file);
    if (seed) sc.run.seed = *seed;
    if (duration) sc.run.duration = *duration;
    if (!formats.empty()) sc.run.formats = cues::parse_output_formats(split_commas(formats), "--format");
    sc.validate();
    const auto dir = resolve_out_dir(out, sc);

    const auto log = cues::run_simulation(sc);
    cues::emit_outputs(log, dir, sc.run.formats);

    const auto& m = log.metrics;
    std::cout << "scenario     " << sc.name << " (" << m["mode"].get<std::string>() << ", seed " << sc.run.seed << ")\n"
              << "steps        " << m["steps"] << "  sim time " << m["sim_time"].get<double>() << " s\n"
              << "final phase  " << m["final_phase"].get<std::string>() << "\n"
              << "detections   " << m["detections"] << "  confirmations " << m["confirmations"] << "\n"
              << "outputs      " << dir.string() << "\n";
    if (m["truncated"].get<bool>()) std::cout << "note: duration cap reached before the mission concluded\n";
    if (m["aborted"].get<bool>()) {
        for (const auto& ev : log.events) {
            if (ev.type == "abort") std::cerr << "run aborted: " << ev.data["reason"].get<std::string>() << "\n";
        }
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& file) {
    const auto sc = cues::load_scenario(file);
    std::cout << "ok: " << sc.name << " (mode " << cues::to_string(sc.mission.mode) << ", dt " << sc.run.dt
              << " s, duration " << sc.run.duration << " s, seed " << sc.run.seed << ", "
              << sc.mission.objects.size() << " objects)\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    const auto log = cues::read_run_dir(dir);
    std::cout << cues::format_report(log.metrics);
    if (!log.states.empty() && log.metrics.contains("coverage_swath")) {
        try {
            const auto r = cues::coverage_report(log);
            std::cout << "\nrecomputed from states.csv\n" << cues::format_report(cues::to_json(r));
        } catch (const cues::EmptyReport& e) {
            std::cout << "\nno active search in states.csv: " << e.what() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coastal underwater evidence search simulator"};
    app.require_subcommand(1);

    std::string scenario_file, out_dir, formats, run_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;

    auto* sim = app.add_subcommand("simulate", "Run a scenario and write the run log");
    sim->add_option("scenario", scenario_file, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sim->add_option("--seed", seed, "Override run.seed");
    sim->add_option("--duration", duration, "Override run.duration [s]")->check(CLI::NonNegativeNumber);
    sim->add_option("--out", out_dir, std::string("Output directory (default: run.output_dir, then $") + kOutEnv +
                                          "/<name>-seed<N>, then runs/<name>-seed<N>)");
    sim->add_option("--format", formats, "Comma-separated subset of csv,json");

    auto* val = app.add_subcommand("validate", "Parse and cross-check a scenario");
    val->add_option("scenario", scenario_file, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);

    auto* rep = app.add_subcommand("report", "Summarize a run directory");
    rep->add_option("run_dir", run_dir, "Directory written by simulate")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(scenario_file, seed, duration, out_dir, formats);
        if (val->parsed()) return cmd_validate(scenario_file);
        if (rep->parsed()) return cmd_report(run_dir);
    } catch (const cues::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return 1;
    } catch (const cues::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
