#ifndef EIT_SCENARIO_HPP
#define EIT_SCENARIO_HPP

#include "eit/adiabatic.hpp"
#include "eit/floquet.hpp"
#include "eit/model.hpp"
#include "eit/spectrum.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eit {

struct GridSpec {
    int n_omega = 512;
    int s_max = 20;
};

struct OutputSelection {
    bool spectrum = true;
    bool snapshot = false;
    bool susceptibility = false;
    bool projection = false;
    bool convergence = false;
};

struct ScenarioConfig {
    std::string name = "custom";
    MediumParams medium;
    ControlFieldSpec control;
    ProbePulseSpec probe;
    double z_end = 0.0;
    std::vector<double> z_samples;
    std::vector<double> t_samples;
    int snapshot_z_points = 400;
    GridSpec grid;
    OutputSelection outputs;
    std::vector<std::pair<int, int>> convergence_truncations; // (s_max, n_omega)
};

// Named presets fig2..fig8 with the published parameter sets.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Empty when the config is runnable; otherwise every violated precondition.
std::vector<std::string> validate_config(const ScenarioConfig& config);

struct SpectrumTable {
    double z = 0.0;
    std::vector<double> freq;
    std::vector<Complex> amp;
};

struct SnapshotTable {
    double t = 0.0;
    std::vector<double> z;
    std::vector<Complex> amp;
};

struct EigenvalueRecord {
    double omega = 0.0;
    int mode_index = 0;
    Complex value;
};

struct SusceptibilityPoint {
    double omega = 0.0;
    Complex chi;
};

struct PeakRecord {
    int n = 0;           // peak nominally at -n * delta
    double freq = 0.0;   // located frequency
    double height = 0.0; // |spectrum| at the local maximum
    double reference = 0.0; // |V| * |Omega10| tau sqrt(pi) * |J_n(g_eff)|
};

struct ScalarReport {
    double kappa2 = 0.0;
    double sin2_theta = 0.0;
    double cos2_theta = 0.0;
    double v_group = 0.0;
    double z0 = 0.0;
    double input_peak_scale = 0.0; // |Omega10| tau sqrt(pi)
    std::optional<Complex> overlap_optimal;
    std::optional<double> residual_norm;
    std::vector<PeakRecord> peaks; // from the last z sample
};

struct RunArtifacts {
    ScenarioConfig config;
    ScalarReport report;
    std::vector<SpectrumTable> spectra;
    std::vector<SnapshotTable> snapshots;
    std::vector<EigenvalueRecord> eigenvalues;
    std::vector<SusceptibilityPoint> susceptibility;
    std::vector<ConvergenceRow> convergence;
    std::vector<std::string> warnings;
};

RunArtifacts run_scenario(const ScenarioConfig& config);

// Writes the tables and report.json; identical inputs produce
// byte-identical files.
void emit(const RunArtifacts& artifacts, const std::filesystem::path& out_dir);

ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

} // namespace eit

#endif
