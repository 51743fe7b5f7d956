#include "eit/scenario.hpp"
#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "eit/units.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eit {

namespace {

using nlohmann::json;

ScenarioConfig base_config() {
    ScenarioConfig cfg;
    cfg.medium = {2e-13, 1.0, 1e-1, 1e-9, 1e-14, 0.0, 0.0};
    cfg.control = {Complex(1e-8, 0.0), SinusoidalChirp{5.0, 2e-9}};
    cfg.probe = {Complex(1e-10, 0.0), 8e9, 0.0, 0.0, 0.0};
    cfg.grid = {512, 20};
    cfg.outputs.spectrum = true;
    return cfg;
}

double control_depth(const ControlFieldSpec& control) {
    if (const auto* sc = std::get_if<SinusoidalChirp>(&control.phase))
        return std::fabs(sc->depth);
    return 0.0;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw NumericalError("emit: cannot open " + path.string() + " for writing");
    out << content;
    if (!out)
        throw NumericalError("emit: write failed for " + path.string());
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg = base_config();
    cfg.name = name;
    const double delta = 2e-9;

    if (name == "fig2") {
        cfg.z_end = 2e10;
        cfg.z_samples = {0.0, 2e10};
        cfg.outputs.susceptibility = true;
        cfg.outputs.projection = true;
    } else if (name == "fig3") {
        cfg.z_end = 2e10;
        cfg.z_samples = {0.0, 2e10};
        cfg.t_samples = {0.0, 2e10, 4e10, 6e10, 1e11};
        cfg.outputs.snapshot = true;
    } else if (name == "fig4") {
        cfg.probe.chirp_depth = dressed_chirp_depth(cfg.medium, cfg.control);
        cfg.probe.chirp_freq = delta;
        cfg.z_end = 2e10;
        cfg.z_samples = {0.0, 2e10};
    } else if (name == "fig5") {
        cfg.probe.chirp_depth = dressed_chirp_depth(cfg.medium, cfg.control);
        cfg.probe.chirp_freq = 1.2e-9;
        cfg.z_end = 6e10;
        cfg.z_samples = {0.0, 1.2e10, 6e10};
        cfg.t_samples = {0.0, 1e11, 2e11, 3e11, 4e11, 5e11};
        cfg.outputs.snapshot = true;
        cfg.outputs.projection = true;
    } else if (name == "fig6") {
        cfg.probe.tau = 1e9;
        cfg.z_end = 1e11;
        cfg.z_samples = {0.0, 1e11};
    } else if (name == "fig7") {
        cfg.probe.tau = 1e9;
        cfg.probe.chirp_depth = dressed_chirp_depth(cfg.medium, cfg.control);
        cfg.probe.chirp_freq = delta;
        cfg.z_end = 4e10;
        cfg.z_samples = {0.0, 8e9, 4e10};
    } else if (name == "fig8") {
        // Stronger control field; the target oscillation period
        // z0 = 3.06e9 pins the amplitude at 3e-8.
        cfg.control.omega2 = Complex(3e-8, 0.0);
        cfg.probe.tau = 1e9;
        cfg.probe.chirp_depth = dressed_chirp_depth(cfg.medium, cfg.control);
        cfg.probe.chirp_freq = delta;
        const double z0 = oscillation_period(cfg.medium, cfg.control);
        cfg.z_end = 3.0 * z0;
        for (int k = 0; k <= 6; ++k)
            cfg.z_samples.push_back(k * z0 / 2.0);
    } else {
        throw ValidationError("unknown preset '" + name + "'");
    }
    return cfg;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> errors;
    auto check = [&errors](auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            errors.emplace_back(e.what());
        }
    };
    check([&] { cfg.medium.validate(); });
    check([&] { cfg.control.validate(); });
    check([&] { cfg.probe.validate(); });
    check([&] { mixing_angle(derive_kappa2(cfg.medium), cfg.control.omega2); });

    if (std::abs(cfg.probe.omega10) > 0.1 * std::abs(cfg.control.omega2))
        errors.emplace_back("weak-probe condition violated: |Omega10| > 0.1 |Omega2|");

    if (cfg.z_end < 0.0)
        errors.emplace_back("z_end must be non-negative");
    for (double z : cfg.z_samples)
        if (z < 0.0 || z > cfg.z_end)
            errors.emplace_back("z sample " + fmt(z) + " outside [0, z_end]");

    if (cfg.grid.n_omega < 2 || cfg.grid.s_max < 0) {
        errors.emplace_back("grid sizes must satisfy n_omega >= 2, s_max >= 0");
        return errors;
    }
    if (cfg.control.chirp_delta() > 0.0 && cfg.probe.tau > 0.0) {
        const FloquetGrid grid{cfg.control.chirp_delta(), cfg.grid.n_omega, cfg.grid.s_max};
        if (1.0 / cfg.probe.tau / grid.domega() < 8.0)
            errors.emplace_back("under-resolved spectrum: fewer than 8 base-band samples across 1/tau");
        const double depth = std::max(control_depth(cfg.control),
                                      std::fabs(cfg.probe.chirp_depth));
        if (cfg.grid.s_max < static_cast<int>(std::ceil(depth)) + 8)
            errors.emplace_back("truncation margin too small: s_max < ceil(chirp depth) + 8");
    }
    if (cfg.snapshot_z_points < 2 && cfg.outputs.snapshot)
        errors.emplace_back("snapshot_z_points must be at least 2");
    return errors;
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
    const std::vector<std::string> errors = validate_config(cfg);
    if (!errors.empty()) {
        std::string joined = "invalid scenario config:";
        for (const auto& e : errors)
            joined += "\n  - " + e;
        throw ValidationError(joined);
    }

    RunArtifacts art;
    art.config = cfg;

    const FloquetGrid grid{cfg.control.chirp_delta(), cfg.grid.n_omega, cfg.grid.s_max};
    const FloquetEngine engine(cfg.medium, cfg.control, grid);
    const FloquetSpectrum input = incoming_spectrum(cfg.probe, grid);

    ScalarReport& rep = art.report;
    rep.kappa2 = engine.kappa2();
    const MixingAngle theta = mixing_angle(rep.kappa2, cfg.control.omega2);
    rep.sin2_theta = theta.sin2;
    rep.cos2_theta = theta.cos2;
    rep.v_group = theta.v_group;
    rep.z0 = oscillation_period(cfg.medium, cfg.control);
    rep.input_peak_scale =
        std::abs(cfg.probe.omega10) * cfg.probe.tau * std::sqrt(AtomicUnits::pi);

    double peak_scale_v = 1.0;
    if (cfg.outputs.projection) {
        const ProjectionResult proj = project_onto_optimal(cfg.probe, cfg.control, cfg.medium);
        rep.overlap_optimal = proj.coefficient;
        rep.residual_norm = proj.residual_norm;
        peak_scale_v = std::abs(proj.coefficient);
    }

    int expm_columns = 0;
    for (int i = 0; i < grid.n_omega; ++i)
        if (engine.column(i).use_expm)
            ++expm_columns;
    if (expm_columns > 0)
        art.warnings.push_back("matrix-exponential fallback engaged on " +
                               std::to_string(expm_columns) + " base-band columns");

    if (cfg.outputs.spectrum) {
        for (double z : cfg.z_samples) {
            const FloquetSpectrum spec = engine.propagate(input, z);
            SpectrumTable table;
            table.z = z;
            for (const auto& [freq, amp] : spec.flatten()) {
                table.freq.push_back(freq);
                table.amp.push_back(amp);
            }
            art.spectra.push_back(std::move(table));
        }
        for (int i = 0; i < grid.n_omega; ++i) {
            const ColumnModes& cm = engine.column(i);
            for (Eigen::Index k = 0; k < cm.eigenvalues.size(); ++k)
                art.eigenvalues.push_back({cm.omega, static_cast<int>(k), cm.eigenvalues(k)});
        }

        // Peak table from the last z sample: local maxima near -n * delta.
        if (!art.spectra.empty()) {
            const SpectrumTable& last = art.spectra.back();
            const double g_eff = dressed_chirp_depth(cfg.medium, cfg.control);
            const int n_peaks = static_cast<int>(std::ceil(control_depth(cfg.control))) + 1;
            const BesselRow row = bessel_row(n_peaks + 20, g_eff);
            for (int n = -n_peaks; n <= n_peaks; ++n) {
                const double target = -n * grid.delta;
                PeakRecord rec;
                rec.n = n;
                rec.height = 0.0;
                for (std::size_t j = 0; j < last.freq.size(); ++j) {
                    if (std::fabs(last.freq[j] - target) <= 0.5 * grid.delta) {
                        const double a = std::abs(last.amp[j]);
                        if (a > rec.height) {
                            rec.height = a;
                            rec.freq = last.freq[j];
                        }
                    }
                }
                rec.reference = peak_scale_v * rep.input_peak_scale * std::fabs(row.at(n));
                rep.peaks.push_back(rec);
            }
        }
    }

    if (cfg.outputs.snapshot && !cfg.t_samples.empty()) {
        std::vector<double> z_grid(static_cast<std::size_t>(cfg.snapshot_z_points));
        for (int j = 0; j < cfg.snapshot_z_points; ++j)
            z_grid[static_cast<std::size_t>(j)] =
                cfg.z_end * j / (cfg.snapshot_z_points - 1);
        art.snapshots.resize(cfg.t_samples.size());
        for (std::size_t it = 0; it < cfg.t_samples.size(); ++it) {
            art.snapshots[it].t = cfg.t_samples[it];
            art.snapshots[it].z = z_grid;
            art.snapshots[it].amp.resize(z_grid.size());
        }
        for (std::size_t jz = 0; jz < z_grid.size(); ++jz) {
            const FloquetSpectrum spec = engine.propagate(input, z_grid[jz]);
            const std::vector<Complex> values = reconstruct_time(spec, cfg.t_samples);
            for (std::size_t it = 0; it < cfg.t_samples.size(); ++it)
                art.snapshots[it].amp[jz] = values[it];
        }
    }

    if (cfg.outputs.susceptibility) {
        const int n_points = 2001;
        const double span = (grid.s_max + 0.5) * grid.delta;
        for (int j = 0; j < n_points; ++j) {
            const double w = -span + 2.0 * span * j / (n_points - 1);
            art.susceptibility.push_back(
                {w, susceptibility(w, cfg.medium, cfg.control.omega2)});
        }
    }

    if (cfg.outputs.convergence) {
        std::vector<std::pair<int, int>> trunc = cfg.convergence_truncations;
        if (trunc.empty())
            trunc = {{cfg.grid.s_max - 5, cfg.grid.n_omega}, {cfg.grid.s_max, cfg.grid.n_omega}};
        const double z_ref = cfg.z_samples.empty() ? cfg.z_end : cfg.z_samples.back();
        art.convergence =
            convergence_report(cfg.medium, cfg.control, cfg.probe, z_ref, trunc);
    }

    return art;
}

namespace {

json config_to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["medium"] = {{"atom_density", cfg.medium.atom_density},
                   {"dipole_ab", cfg.medium.dipole_ab},
                   {"omega1", cfg.medium.omega1},
                   {"gamma_ab", cfg.medium.gamma_ab},
                   {"gamma_cb", cfg.medium.gamma_cb},
                   {"delta1", cfg.medium.delta1},
                   {"delta2", cfg.medium.delta2}};
    json control;
    control["omega2"] = {cfg.control.omega2.real(), cfg.control.omega2.imag()};
    if (const auto* sc = std::get_if<SinusoidalChirp>(&cfg.control.phase)) {
        control["phase"] = {{"type", "sinusoidal"}, {"depth", sc->depth}, {"delta", sc->delta}};
    } else {
        const auto& gp = std::get<GeneralPeriodicPhase>(cfg.control.phase);
        json coeffs = json::array();
        for (const Complex& c : gp.coefficients)
            coeffs.push_back({c.real(), c.imag()});
        control["phase"] = {{"type", "fourier"}, {"delta", gp.delta}, {"coefficients", coeffs}};
    }
    j["control"] = control;
    j["probe"] = {{"omega10", {cfg.probe.omega10.real(), cfg.probe.omega10.imag()}},
                  {"tau", cfg.probe.tau},
                  {"chirp_depth", cfg.probe.chirp_depth},
                  {"chirp_freq", cfg.probe.chirp_freq},
                  {"center_time", cfg.probe.center_time}};
    j["z_end"] = cfg.z_end;
    j["z_samples"] = cfg.z_samples;
    j["t_samples"] = cfg.t_samples;
    j["snapshot_z_points"] = cfg.snapshot_z_points;
    j["grid"] = {{"n_omega", cfg.grid.n_omega}, {"s_max", cfg.grid.s_max}};
    j["outputs"] = {{"spectrum", cfg.outputs.spectrum},
                    {"snapshot", cfg.outputs.snapshot},
                    {"susceptibility", cfg.outputs.susceptibility},
                    {"projection", cfg.outputs.projection},
                    {"convergence", cfg.outputs.convergence}};
    if (!cfg.convergence_truncations.empty()) {
        json t = json::array();
        for (const auto& [s, n] : cfg.convergence_truncations)
            t.push_back({s, n});
        j["convergence_truncations"] = t;
    }
    return j;
}

Complex complex_from_json(const json& j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

ScenarioConfig config_from_json(const json& j) {
    ScenarioConfig cfg;
    cfg.name = j.value("name", "custom");
    const json& m = j.at("medium");
    cfg.medium = {m.at("atom_density"), m.at("dipole_ab"), m.at("omega1"),
                  m.at("gamma_ab"),     m.at("gamma_cb"),  m.value("delta1", 0.0),
                  m.value("delta2", 0.0)};
    const json& c = j.at("control");
    cfg.control.omega2 = complex_from_json(c.at("omega2"));
    const json& ph = c.at("phase");
    const std::string type = ph.at("type");
    if (type == "sinusoidal") {
        cfg.control.phase = SinusoidalChirp{ph.at("depth"), ph.at("delta")};
    } else if (type == "fourier") {
        GeneralPeriodicPhase gp;
        gp.delta = ph.at("delta");
        for (const json& cc : ph.at("coefficients"))
            gp.coefficients.push_back(complex_from_json(cc));
        cfg.control.phase = gp;
    } else {
        throw ValidationError("config: unknown phase type '" + type + "'");
    }
    const json& p = j.at("probe");
    cfg.probe.omega10 = complex_from_json(p.at("omega10"));
    cfg.probe.tau = p.at("tau");
    cfg.probe.chirp_depth = p.value("chirp_depth", 0.0);
    cfg.probe.chirp_freq = p.value("chirp_freq", 0.0);
    cfg.probe.center_time = p.value("center_time", 0.0);
    cfg.z_end = j.value("z_end", 0.0);
    cfg.z_samples = j.value("z_samples", std::vector<double>{});
    cfg.t_samples = j.value("t_samples", std::vector<double>{});
    cfg.snapshot_z_points = j.value("snapshot_z_points", 400);
    if (j.contains("grid")) {
        cfg.grid.n_omega = j["grid"].value("n_omega", 512);
        cfg.grid.s_max = j["grid"].value("s_max", 20);
    }
    if (j.contains("outputs")) {
        const json& o = j["outputs"];
        cfg.outputs.spectrum = o.value("spectrum", true);
        cfg.outputs.snapshot = o.value("snapshot", false);
        cfg.outputs.susceptibility = o.value("susceptibility", false);
        cfg.outputs.projection = o.value("projection", false);
        cfg.outputs.convergence = o.value("convergence", false);
    }
    if (j.contains("convergence_truncations"))
        for (const json& t : j["convergence_truncations"])
            cfg.convergence_truncations.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
    return cfg;
}

} // namespace

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config parse error in " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw NumericalError("cannot open " + path.string() + " for writing");
    out << config_to_json(cfg).dump(2) << "\n";
}

void emit(const RunArtifacts& art, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw NumericalError("emit: cannot create directory " + out_dir.string() +
                             ": " + ec.message());

    for (std::size_t k = 0; k < art.spectra.size(); ++k) {
        const SpectrumTable& t = art.spectra[k];
        std::string body = "# z_au = " + fmt(t.z) + "\nfrequency_au,re,im,abs\n";
        for (std::size_t j = 0; j < t.freq.size(); ++j)
            body += fmt(t.freq[j]) + "," + fmt(t.amp[j].real()) + "," +
                    fmt(t.amp[j].imag()) + "," + fmt(std::abs(t.amp[j])) + "\n";
        write_file(out_dir / ("spectrum_z" + std::to_string(k) + ".csv"), body);
    }

    for (std::size_t k = 0; k < art.snapshots.size(); ++k) {
        const SnapshotTable& t = art.snapshots[k];
        std::string body = "# t_au = " + fmt(t.t) + "\nz_au,re,im,abs\n";
        for (std::size_t j = 0; j < t.z.size(); ++j)
            body += fmt(t.z[j]) + "," + fmt(t.amp[j].real()) + "," +
                    fmt(t.amp[j].imag()) + "," + fmt(std::abs(t.amp[j])) + "\n";
        write_file(out_dir / ("snapshot_t" + std::to_string(k) + ".csv"), body);
    }

    if (!art.eigenvalues.empty()) {
        std::string body = "omega_au,mode_index,re,im\n";
        for (const EigenvalueRecord& r : art.eigenvalues)
            body += fmt(r.omega) + "," + std::to_string(r.mode_index) + "," +
                    fmt(r.value.real()) + "," + fmt(r.value.imag()) + "\n";
        write_file(out_dir / "eigenvalues.csv", body);
    }

    if (!art.susceptibility.empty()) {
        std::string body = "omega_au,chi_re,chi_im\n";
        for (const SusceptibilityPoint& p : art.susceptibility)
            body += fmt(p.omega) + "," + fmt(p.chi.real()) + "," + fmt(p.chi.imag()) + "\n";
        write_file(out_dir / "susceptibility.csv", body);
    }

    if (!art.convergence.empty()) {
        std::string body = "s_max,n_omega,rel_delta,pass\n";
        for (const ConvergenceRow& r : art.convergence)
            body += std::to_string(r.s_max) + "," + std::to_string(r.n_omega) + "," +
                    fmt(r.rel_delta) + "," + (r.pass ? "1" : "0") + "\n";
        write_file(out_dir / "convergence.csv", body);
    }

    json rep;
    rep["config"] = config_to_json(art.config);
    rep["scalars"] = {{"kappa2", art.report.kappa2},
                      {"sin2_theta", art.report.sin2_theta},
                      {"cos2_theta", art.report.cos2_theta},
                      {"v_group", art.report.v_group},
                      {"z0", art.report.z0},
                      {"input_peak_scale", art.report.input_peak_scale}};
    if (art.report.overlap_optimal) {
        rep["scalars"]["overlap_optimal"] = {art.report.overlap_optimal->real(),
                                             art.report.overlap_optimal->imag()};
        rep["scalars"]["residual_norm"] = *art.report.residual_norm;
    }
    json peaks = json::array();
    for (const PeakRecord& p : art.report.peaks)
        peaks.push_back({{"n", p.n},
                         {"freq", p.freq},
                         {"height", p.height},
                         {"bessel_reference", p.reference}});
    rep["peaks"] = peaks;
    rep["warnings"] = art.warnings;
    write_file(out_dir / "report.json", rep.dump(2) + "\n");
}

} // namespace eit
