#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linkmos/evaluate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitInputError = 2;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitInputError;
    }
    out << text;
    return kExitOk;
}

linkmos::Scenario load_from(const std::string& scenario_path,
                            const std::string& preset) {
    if (!scenario_path.empty()) return linkmos::load_scenario_file(scenario_path);
    return linkmos::preset_scenario(preset);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linkmos: closed-form link + QoE evaluation over SINR-indexed PHY curves"};
    app.require_subcommand(1);

    std::string scenario_path, preset, out_path;
    double time_s = 0.0;

    CLI::App* eval = app.add_subcommand("evaluate", "Evaluate a scenario and print the full report as JSON");
    CLI::Option* eval_sc = eval->add_option("--scenario", scenario_path, "Scenario JSON file");
    CLI::Option* eval_pr = eval->add_option("--preset", preset, "Bundled preset name (see 'presets')");
    eval_sc->excludes(eval_pr);
    eval->add_option("--time", time_s, "Evaluation time for trace-driven SINR, seconds")->capture_default_str();
    eval->add_option("--out", out_path, "Write the report to this file instead of stdout");

    double sinr_min = 0, sinr_max = 0, step = 1.0;
    CLI::App* swp = app.add_subcommand("sweep", "Evaluate over an SINR grid and print one CSV row per point");
    CLI::Option* swp_sc = swp->add_option("--scenario", scenario_path, "Scenario JSON file");
    CLI::Option* swp_pr = swp->add_option("--preset", preset, "Bundled preset name");
    swp_sc->excludes(swp_pr);
    swp->add_option("--sinr-min", sinr_min, "Grid start, dB")->required();
    swp->add_option("--sinr-max", sinr_max, "Grid end, dB")->required();
    swp->add_option("--step", step, "Grid step, dB")->capture_default_str();
    swp->add_option("--out", out_path, "Write the CSV to this file instead of stdout");

    std::uint64_t seed = 1, trials = 1'000'000;
    double warmup = 0.1;
    double v_lambda = 90, v_mu = 100, v_rxwin = 0.3, v_bler = 0.1, v_sinr = 0;
    int v_k = 10, v_nmax = 4;
    CLI::App* val = app.add_subcommand("validate", "Replay the closed forms against the discrete-event oracle");
    CLI::Option* val_sc = val->add_option("--scenario", scenario_path, "Derive queue and HARQ inputs from this scenario's uplink");
    CLI::Option* val_pr = val->add_option("--preset", preset, "Derive inputs from a bundled preset's uplink");
    val_sc->excludes(val_pr);
    CLI::Option* val_si = val->add_option("--sinr", v_sinr, "Operating SINR for scenario-derived inputs, dB (default: the scenario's SINR at t=0)");
    val->add_option("--seed", seed, "Simulation seed")->capture_default_str();
    val->add_option("--trials", trials, "Simulated arrivals / HARQ trials")->capture_default_str();
    val->add_option("--warmup", warmup, "Leading fraction of arrivals discarded")->capture_default_str();
    CLI::Option* val_l = val->add_option("--lambda", v_lambda, "Arrival rate, packets/s")->capture_default_str();
    CLI::Option* val_m = val->add_option("--mu", v_mu, "Service rate, packets/s")->capture_default_str();
    CLI::Option* val_k = val->add_option("--k", v_k, "System capacity K")->capture_default_str();
    CLI::Option* val_w = val->add_option("--rx-window", v_rxwin, "Receive tolerance window, s")->capture_default_str();
    CLI::Option* val_b = val->add_option("--bler", v_bler, "First-transmission BLER; retransmissions follow the geometric chain")->capture_default_str();
    CLI::Option* val_n = val->add_option("--n-max", v_nmax, "Max HARQ transmissions")->capture_default_str();
    for (CLI::Option* o : {val_l, val_m, val_k, val_w, val_b, val_n}) {
        o->excludes(val_sc);
        o->excludes(val_pr);
    }
    val->add_option("--out", out_path, "Write the comparison table to this file instead of stdout");

    std::string preset_name;
    CLI::App* pre = app.add_subcommand("presets", "List bundled presets, or print one as a scenario document");
    pre->add_option("name", preset_name, "Preset to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*eval) {
            if (scenario_path.empty() && preset.empty())
                throw std::runtime_error("evaluate needs --scenario or --preset");
            linkmos::Scenario sc = load_from(scenario_path, preset);
            linkmos::EvaluationReport rep = linkmos::evaluate(sc, time_s);
            return write_output(linkmos::report_to_json(rep), out_path);
        }
        if (*swp) {
            if (scenario_path.empty() && preset.empty())
                throw std::runtime_error("sweep needs --scenario or --preset");
            linkmos::Scenario sc = load_from(scenario_path, preset);
            std::vector<linkmos::SweepRow> rows =
                linkmos::sweep(sc, sinr_min, sinr_max, step);
            return write_output(linkmos::sweep_to_csv(rows), out_path);
        }
        if (*val) {
            linkmos::QueueConfig queue;
            linkmos::TimingConfig timing;
            std::vector<double> bler_seq;
            int n_max = v_nmax;
            if (!scenario_path.empty() || !preset.empty()) {
                linkmos::Scenario sc = load_from(scenario_path, preset);
                double s = *val_si ? v_sinr : linkmos::sinr_at(sc.ul_sinr, 0.0);
                linkmos::EvaluationReport rep = linkmos::evaluate_at_sinr(sc, s);
                queue = {sc.ul_lambda_pps, rep.ul.queue.mu_e_pps, sc.service.queue_k};
                timing = sc.timing;
                timing.t_rxwin_s = sc.service.rx_window_s;
                timing.n_harq_max = sc.service.n_harq_max;
                bler_seq = rep.ul.bler_seq;
                n_max = sc.service.n_harq_max;
            } else {
                queue = {v_lambda, v_mu, v_k};
                timing.t_rxwin_s = v_rxwin;
                timing.n_harq_max = v_nmax;
                for (int i = 1; i <= v_nmax; ++i)
                    bler_seq.push_back(std::pow(v_bler, i));
            }
            linkmos::SimConfig sim{seed, trials, warmup};
            linkmos::ValidationReport rep =
                linkmos::validate(queue, timing, bler_seq, n_max, sim);
            int rc = write_output(linkmos::validation_to_text(rep), out_path);
            if (rc != kExitOk) return rc;
            return rep.pass ? kExitOk : kExitValidationFailed;
        }
        if (*pre) {
            if (preset_name.empty()) {
                std::string names;
                for (const std::string& n : linkmos::preset_names()) names += n + "\n";
                return write_output(names, "");
            }
            return write_output(linkmos::preset_scenario_json(preset_name) + "\n", "");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
