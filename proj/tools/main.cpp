// Scenario runner for chirped-control EIT pulse propagation.
//
// Subcommands:
//   run      --scenario <fig2..fig8|custom> [--config <path>] --out <dir>
//   validate --config <path>
//   converge --scenario <name> [--config <path>] --truncations <SxN,...> [--out <dir>]
//   report   --out <dir>
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure.

#include "eit/errors.hpp"
#include "eit/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

eit::ScenarioConfig resolve_config(const std::string& scenario, const std::string& config_path) {
    if (scenario == "custom" || scenario.empty()) {
        if (config_path.empty())
            throw eit::ValidationError("a custom scenario needs --config <path>");
        return eit::load_config(config_path);
    }
    eit::ScenarioConfig cfg = eit::preset(scenario);
    if (!config_path.empty()) {
        // Config overrides the preset wholesale; the preset only supplies the name.
        cfg = eit::load_config(config_path);
        cfg.name = scenario;
    }
    return cfg;
}

std::vector<std::pair<int, int>> parse_truncations(const std::string& list) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos)
            throw eit::ValidationError("bad truncation item '" + item + "', expected SxN (e.g. 20x512)");
        out.emplace_back(std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1)));
    }
    if (out.size() < 2)
        throw eit::ValidationError("--truncations needs at least two SxN entries");
    return out;
}

int cmd_run(const std::string& scenario, const std::string& config_path,
            const std::string& out_dir) {
    const eit::ScenarioConfig cfg = resolve_config(scenario, config_path);
    const auto errors = eit::validate_config(cfg);
    if (!errors.empty()) {
        for (const auto& e : errors)
            std::cerr << "error: " << e << "\n";
        return 1;
    }
    const eit::RunArtifacts art = eit::run_scenario(cfg);
    eit::emit(art, out_dir);
    std::cout << "scenario '" << cfg.name << "' -> " << out_dir << "\n"
              << "  sin2_theta = " << art.report.sin2_theta
              << ", v_group = " << art.report.v_group
              << ", z0 = " << art.report.z0 << "\n";
    if (art.report.overlap_optimal)
        std::cout << "  overlap with optimal pulse |V| = "
                  << std::abs(*art.report.overlap_optimal) << "\n";
    for (const auto& w : art.warnings)
        std::cout << "  warning: " << w << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path) {
    const eit::ScenarioConfig cfg = eit::load_config(config_path);
    const auto errors = eit::validate_config(cfg);
    if (errors.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const auto& e : errors)
        std::cerr << "error: " << e << "\n";
    return 1;
}

int cmd_converge(const std::string& scenario, const std::string& config_path,
                 const std::string& truncations, const std::string& out_dir) {
    eit::ScenarioConfig cfg = resolve_config(scenario, config_path);
    cfg.outputs.spectrum = false;
    cfg.outputs.snapshot = false;
    cfg.outputs.susceptibility = false;
    cfg.outputs.projection = false;
    cfg.outputs.convergence = true;
    cfg.convergence_truncations = parse_truncations(truncations);
    const eit::RunArtifacts art = eit::run_scenario(cfg);
    std::cout << "s_max  n_omega  rel_delta      pass\n";
    bool all_pass = true;
    for (const auto& row : art.convergence) {
        std::cout << row.s_max << "  " << row.n_omega << "  " << row.rel_delta << "  "
                  << (row.pass ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && row.pass;
    }
    if (!out_dir.empty())
        eit::emit(art, out_dir);
    return all_pass ? 0 : 2;
}

int cmd_report(const std::string& out_dir) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / "report.json";
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: no report.json in " << out_dir << "\n";
        return 1;
    }
    nlohmann::json rep;
    in >> rep;
    const auto& s = rep.at("scalars");
    std::cout << "scenario: " << rep.at("config").at("name").get<std::string>() << "\n"
              << "  kappa2          = " << s.at("kappa2").get<double>() << "\n"
              << "  sin2_theta      = " << s.at("sin2_theta").get<double>() << "\n"
              << "  v_group         = " << s.at("v_group").get<double>() << "\n"
              << "  z0              = " << s.at("z0").get<double>() << "\n";
    if (s.contains("overlap_optimal"))
        std::cout << "  |V| (projection) = "
                  << std::abs(eit::Complex(s["overlap_optimal"][0].get<double>(),
                                           s["overlap_optimal"][1].get<double>()))
                  << "\n";
    if (rep.contains("peaks") && !rep["peaks"].empty()) {
        std::cout << "  peaks (n, freq, height, bessel reference):\n";
        for (const auto& p : rep["peaks"])
            std::cout << "    " << p.at("n").get<int>() << "  " << p.at("freq").get<double>()
                      << "  " << p.at("height").get<double>() << "  "
                      << p.at("bessel_reference").get<double>() << "\n";
    }
    for (const auto& w : rep.value("warnings", std::vector<std::string>{}))
        std::cout << "  warning: " << w << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chirped-control EIT pulse propagation"};
    app.require_subcommand(1);

    std::string scenario = "custom";
    std::string config_path;
    std::string out_dir = "out";
    std::string truncations;

    auto* run = app.add_subcommand("run", "Run a scenario and emit tables");
    run->add_option("--scenario", scenario, "fig2..fig8 or custom");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--out", out_dir, "output directory")->required();

    auto* validate = app.add_subcommand("validate", "Validate a config file");
    validate->add_option("--config", config_path, "JSON config file")->required();

    auto* converge = app.add_subcommand("converge", "Truncation convergence check");
    converge->add_option("--scenario", scenario, "fig2..fig8 or custom");
    converge->add_option("--config", config_path, "JSON config file");
    converge->add_option("--truncations", truncations, "comma list of SxN, e.g. 15x512,20x512")
        ->required();
    converge->add_option("--out", out_dir, "optional output directory");

    auto* report = app.add_subcommand("report", "Print the summary of an emitted run");
    report->add_option("--out", out_dir, "directory holding report.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario, config_path, out_dir);
        if (validate->parsed())
            return cmd_validate(config_path);
        if (converge->parsed())
            return cmd_converge(scenario, config_path, truncations, out_dir);
        if (report->parsed())
            return cmd_report(out_dir);
    } catch (const eit::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const eit::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
