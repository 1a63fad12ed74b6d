// Command-line front end: closed-form comparisons, the pure-term pipeline,
// vacuum drag, Unruh and cosmology conversions, and the MEMS oscillator.
// Every run writes a manifest plus JSON/CSV artifacts into a run directory;
// outputs are byte-identical for identical seeds regardless of --workers.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/extractor.hpp"
#include "casimir/geometry.hpp"
#include "casimir/kernel.hpp"
#include "casimir/mems.hpp"
#include "casimir/pairwise.hpp"
#include "casimir/serialize.hpp"
#include "casimir/spectra.hpp"

namespace fs = std::filesystem;
using casimir::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 2;
constexpr int exit_fit = 3;
constexpr int exit_usage = 64;
constexpr int exit_config = 65;

struct RunContext {
    std::string run_dir;
    unsigned workers = 1;
    std::string cache_dir = "pdd-cache";
};

json constants_json() {
    return {{"hbar_J_s", casimir::constants::hbar},
            {"c_m_s", casimir::constants::speed_of_light},
            {"k_J_K", casimir::constants::boltzmann},
            {"eV_J", casimir::constants::electron_volt},
            {"atm_Pa", casimir::constants::atmosphere},
            {"hbar_c_J_m", casimir::constants::hbar_c}};
}

fs::path prepare_run_dir(const RunContext& ctx, const std::string& subcommand) {
    fs::path dir = ctx.run_dir.empty() ? fs::path("runs") / subcommand
                                       : fs::path(ctx.run_dir);
    fs::create_directories(dir);
    return dir;
}

// The manifest records everything needed to reproduce the output bytes:
// config, seeds and constants -- but not --workers, which only affects
// scheduling, never results.
void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const json& config) {
    json manifest{{"schema", "manifest-v1"},
                  {"toolkitVersion", casimir::toolkit_version},
                  {"subcommand", subcommand},
                  {"config", config},
                  {"constants", constants_json()}};
    casimir::write_json_file(dir / "manifest.json", manifest);
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            line += ",";
        line += fields[i];
    }
    return line + "\n";
}

double parse_epsilon(const std::string& text) {
    if (text == "inf" || text == "infinite" || text == "conductor")
        return casimir::epsilon_infinity;
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw casimir::domain_error("cannot parse epsilon '" + text + "'");
    }
}

// ---------------------------------------------------------------- compare --

int run_compare(const RunContext& ctx) {
    const auto rows = casimir::deviation_report();
    const fs::path dir = prepare_run_dir(ctx, "compare");

    json out = json::array();
    std::string csv = csv_line({"quantity", "pairwise", "exact", "ratio", "ratioIsExact",
                                "pairwiseForce", "exactForce"});
    std::cout << "pairwise approximation vs exact results\n";
    for (const auto& row : rows) {
        out.push_back(casimir::to_json(row));
        csv += csv_line({row.quantity, casimir::format_double(row.pairwise),
                         casimir::format_double(row.exact),
                         casimir::format_double(row.ratio),
                         row.ratio_is_exact ? "true" : "false",
                         casimir::to_string(row.pairwise_force),
                         casimir::to_string(row.exact_force)});
        std::cout << "  " << row.quantity << "\n    pairwise " << row.pairwise
                  << "  exact " << row.exact << "  ratio " << row.ratio << " ("
                  << row.note << ")\n";
    }
    casimir::write_json_file(dir / "compare.json", out);
    casimir::write_text_file(dir / "compare.csv", csv);
    write_manifest(dir, "compare", json::object());
    std::cout << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// --------------------------------------------------------------- pairwise --

int run_pairwise(const RunContext& ctx, double d, double a, double alpha,
                 const std::string& epsilon_text) {
    const double epsilon = parse_epsilon(epsilon_text);
    const double n_alpha = casimir::n_alpha_from_epsilon(epsilon);
    const fs::path dir = prepare_run_dir(ctx, "pairwise");

    json out{{"distance", d},
             {"radius", a},
             {"alpha", alpha},
             {"epsilon", std::isinf(epsilon) ? json("inf") : json(epsilon)},
             {"nAlpha", n_alpha},
             {"retardedVdW", casimir::retarded_vdw(d, alpha)},
             {"casimirPolder", casimir::casimir_polder_potential(d, alpha)},
             {"atomHalfSpacePairwise", casimir::atom_half_space_pairwise(d, alpha, n_alpha)},
             {"casimirPlatePressure", casimir::casimir_plate_pressure(d)},
             {"platePlatePairwisePressure", casimir::plate_plate_pairwise_pressure(d)},
             {"ballPairwisePure", casimir::ball_pairwise_pure(a, epsilon)}};
    if (!casimir::n_alpha_physical(n_alpha))
        std::cerr << "warning: N*alpha outside [0, 3/4pi] is unphysical\n";

    casimir::write_json_file(dir / "pairwise.json", out);
    std::string csv = csv_line({"quantity", "value"});
    for (const auto& [key, value] : out.items())
        if (value.is_number())
            csv += csv_line({key, casimir::format_double(value.get<double>())});
    casimir::write_text_file(dir / "pairwise.csv", csv);
    write_manifest(dir, "pairwise",
                   {{"distance", d}, {"radius", a}, {"alpha", alpha},
                    {"epsilon", epsilon_text}});

    std::cout << "closed-form pairwise results (reduced units, hbar = c = 1)\n"
              << out.dump(2) << "\nartifacts in " << dir.string() << "\n";
    return exit_ok;
}

// -------------------------------------------------------------- pure-term --

int run_pure_term(const RunContext& ctx, const std::string& body_name, double scale,
                  const std::string& epsilon_text, const std::string& method_name,
                  int resolution, std::int64_t samples, std::uint64_t seed,
                  double s_lo, double s_hi, int s_points, const std::string& log_term,
                  bool zero_check) {
    casimir::Body body;
    if (body_name == "ball")
        body = casimir::Ball{scale};
    else if (body_name == "cube")
        body = casimir::Cube{scale};
    else if (body_name == "cylinder")
        body = casimir::Cylinder{scale};
    else
        throw casimir::domain_error("pure-term: body must be ball, cube or cylinder");

    casimir::PipelineConfig cfg;
    if (method_name == "analytic")
        cfg.method = casimir::PdMethod::Analytic;
    else if (method_name == "grid")
        cfg.method = casimir::PdMethod::GridAutocorrelation;
    else if (method_name == "mc")
        cfg.method = casimir::PdMethod::MonteCarlo;
    else
        throw casimir::domain_error("pure-term: method must be analytic, grid or mc");
    cfg.resolution = resolution;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.workers = ctx.workers;
    cfg.s_window_lo = s_lo;
    cfg.s_window_hi = s_hi;
    cfg.s_points = s_points;
    if (log_term == "on")
        cfg.log_term_override = true;
    else if (log_term == "off")
        cfg.log_term_override = false;
    else if (log_term != "auto")
        throw casimir::domain_error("pure-term: --log-term must be auto, on or off");

    const auto material = casimir::Material::from_epsilon(parse_epsilon(epsilon_text));
    const auto row = casimir::pure_term_report(body, material, cfg);

    const fs::path dir = prepare_run_dir(ctx, "pure-term");
    json out = casimir::to_json(row);
    if (zero_check && body_name == "cylinder") {
        const auto chk = casimir::cylinder_zero_check(std::get<casimir::Cylinder>(body),
                                                      material, cfg);
        out["zeroCheck"] = {{"b0Base", chk.b0_base},
                           {"b0Doubled", chk.b0_doubled},
                           {"consistentWithZero", chk.consistent_with_zero}};
    }
    casimir::write_json_file(dir / "pure-term.json", out);

    std::string csv = csv_line({"geometry", "b4", "b3", "b2", "b1", "bLog", "b0",
                                "b0Uncertainty", "fitResidual", "condition",
                                "exactValue", "exactSign", "signAgreement"});
    const auto& e = row.expansion;
    csv += csv_line({row.geometry, casimir::format_double(e.b4),
                     casimir::format_double(e.b3), casimir::format_double(e.b2),
                     casimir::format_double(e.b1), casimir::format_double(e.b_log),
                     casimir::format_double(e.b0),
                     casimir::format_double(e.b0_uncertainty),
                     casimir::format_double(e.fit_residual),
                     casimir::format_double(e.condition_number),
                     row.exact.value ? casimir::format_double(*row.exact.value) : "",
                     std::to_string(row.exact.sign),
                     row.sign_agreement ? "true" : "false"});
    casimir::write_text_file(dir / "pure-term.csv", csv);

    write_manifest(dir, "pure-term",
                   {{"body", casimir::to_json(body)},
                    {"epsilon", epsilon_text},
                    {"method", method_name},
                    {"resolution", resolution},
                    {"samples", samples},
                    {"seed", seed},
                    {"sWindow", {s_lo, s_hi}},
                    {"sPoints", s_points},
                    {"logTerm", log_term},
                    {"zeroCheck", zero_check}});

    std::cout << "pure Casimir term for " << row.geometry << " (scale " << scale << ")\n"
              << "  b0 = " << e.b0 << " +- " << e.b0_uncertainty
              << "  (fit residual " << e.fit_residual << ", condition "
              << e.condition_number << ")\n";
    if (row.exact.value)
        std::cout << "  exact reference " << *row.exact.value << " (" << row.exact.note
                  << ")\n";
    else
        std::cout << "  exact reference: " << row.exact.note << "\n";
    std::cout << "  sign agreement: " << (row.sign_agreement ? "yes" : "no") << "\n"
              << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------------- drag --

int run_drag(const RunContext& ctx, const std::string& spectrum, double temperature,
             double factor, const std::string& csv_file, double omega, double b12,
             double p1, double p2, bool thermal, double velocity) {
    casimir::SpectralDensity sd = casimir::VacuumSpectrum{};
    if (spectrum == "vacuum") {
        sd = casimir::VacuumSpectrum{};
    } else if (spectrum == "planck") {
        sd = casimir::PlanckSpectrum{temperature};
    } else if (spectrum == "scaled") {
        sd = casimir::ScaledVacuumSpectrum{factor};
    } else if (spectrum == "csv") {
        std::ifstream in(csv_file);
        if (!in)
            throw casimir::domain_error("drag: cannot open spectrum file " + csv_file);
        std::vector<double> w, r;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double wi, ri;
            if (ls >> wi >> ri) {
                w.push_back(wi);
                r.push_back(ri);
            }
        }
        sd = casimir::TabulatedSpectrum(w, r);
    } else {
        throw casimir::domain_error("drag: spectrum must be vacuum, planck, scaled or csv");
    }

    casimir::TwoLevelAtom atom;
    if (thermal) {
        atom = casimir::thermal_atom(omega, b12, temperature);
    } else {
        atom.omega = omega;
        atom.b12 = b12;
        atom.p1 = p1;
        atom.p2 = p2;
    }
    if (!casimir::nonrelativistic(velocity))
        std::cerr << "warning: |v| > 0.01c, the nonrelativistic drag formula is strained\n";

    const auto sample = casimir::eval_spectral(sd, omega);
    const double susceptibility = casimir::drag_susceptibility(sd, omega);
    const double force = casimir::drag_force(atom, sd, velocity);

    const fs::path dir = prepare_run_dir(ctx, "drag");
    json out{{"spectrum", spectrum},
             {"omega_rad_s", omega},
             {"rho_J_s_m3", sample.rho},
             {"dRhoDOmega", sample.drho_domega},
             {"dragSusceptibility", susceptibility},
             {"atom", {{"omega", atom.omega}, {"b12", atom.b12}, {"p1", atom.p1},
                       {"p2", atom.p2}}},
             {"velocity_m_s", velocity},
             {"force_N", force}};
    casimir::write_json_file(dir / "drag.json", out);
    write_manifest(dir, "drag",
                   {{"spectrum", spectrum}, {"temperature", temperature},
                    {"factor", factor}, {"file", csv_file}, {"omega", omega},
                    {"b12", b12}, {"p1", atom.p1}, {"p2", atom.p2},
                    {"thermal", thermal}, {"velocity", velocity}});

    std::cout << "drag force = " << force << " N  (rho = " << sample.rho
              << " J s/m^3, susceptibility = " << susceptibility << ")\n"
              << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------------ unruh --

int run_unruh(const RunContext& ctx, double temperature, double acceleration) {
    const fs::path dir = prepare_run_dir(ctx, "unruh");
    json out;
    if (temperature > 0.0) {
        out["temperature_K"] = temperature;
        out["acceleration_m_s2"] = casimir::unruh_acceleration(temperature);
    } else {
        out["acceleration_m_s2"] = acceleration;
        out["temperature_K"] = casimir::unruh_temperature(acceleration);
    }
    casimir::write_json_file(dir / "unruh.json", out);
    write_manifest(dir, "unruh",
                   {{"temperature", temperature}, {"acceleration", acceleration}});
    std::cout << "T = " << out["temperature_K"].get<double>() << " K  <->  a = "
              << out["acceleration_m_s2"].get<double>() << " m/s^2\n"
              << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------------ cosmo --

int run_cosmo(const RunContext& ctx, double cutoff) {
    const auto budget = casimir::vacuum_energy_budget(cutoff);
    const fs::path dir = prepare_run_dir(ctx, "cosmo");
    json out{{"cutoffLength_m", budget.cutoff_length_m},
             {"cutoffOmega_rad_s", budget.cutoff_omega},
             {"energyDensity_J_m3", budget.energy_density_J_m3},
             {"massDensity_g_cm3", budget.mass_density_g_cm3},
             {"observedEnergyDensity_J_m3", budget.observed_energy_density_J_m3},
             {"observedMassDensity_g_cm3", budget.observed_mass_density_g_cm3},
             {"ordersOfMagnitudeGap", budget.orders_of_magnitude_gap}};
    casimir::write_json_file(dir / "cosmo.json", out);
    write_manifest(dir, "cosmo", {{"cutoffLength", cutoff}});
    std::cout << "vacuum energy density " << budget.energy_density_J_m3 << " J/m^3 ("
              << budget.mass_density_g_cm3 << " g/cm^3)\n"
              << "observed bound " << budget.observed_energy_density_J_m3 << " J/m^3 ("
              << budget.observed_mass_density_g_cm3 << " g/cm^3)\n"
              << "gap: " << budget.orders_of_magnitude_gap << " orders of magnitude\n"
              << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------------- mems --

int run_mems(const RunContext& ctx, const casimir::OscillatorConfig& cfg, bool simulate,
             double initial_gap, double initial_velocity, double duration, double dt,
             std::size_t stride, bool sweep, const std::string& sweep_param, double from,
             double to, int steps, double pressure_gap) {
    const fs::path dir = prepare_run_dir(ctx, "mems");
    const double lambda = casimir::lambda_param(cfg);
    const auto eqs = casimir::equilibria(cfg);

    json out{{"lambda", lambda},
             {"lambdaCritical", casimir::lambda_critical},
             {"bistable", lambda < casimir::lambda_critical},
             {"config",
              {{"springConstant_N_m", cfg.spring_constant},
               {"restGap_m", cfg.rest_gap},
               {"plateArea_m2", cfg.plate_area},
               {"plateMass_kg", cfg.plate_mass},
               {"damping_kg_s", cfg.damping},
               {"contactFloorFactor", cfg.contact_floor_factor}}}};
    json eq_json = json::array();
    for (const auto& eq : eqs) {
        const char* stability = eq.stability == casimir::Stability::Stable ? "stable"
                                : eq.stability == casimir::Stability::Unstable
                                    ? "unstable"
                                    : "marginal";
        eq_json.push_back({{"delta", eq.delta},
                           {"gap_m", eq.delta * cfg.rest_gap},
                           {"stability", stability}});
    }
    out["equilibria"] = eq_json;

    const auto pressure = casimir::pressure_at_gap(pressure_gap > 0.0 ? pressure_gap
                                                                      : cfg.rest_gap);
    out["pressure"] = {{"gap_m", pressure_gap > 0.0 ? pressure_gap : cfg.rest_gap},
                       {"pascal", pressure.pascals},
                       {"atmosphere", pressure.atmospheres}};

    if (simulate) {
        const auto traj = casimir::simulate(cfg, initial_gap, initial_velocity, duration,
                                            dt, stride);
        std::string csv = csv_line({"t_s", "gap_m", "velocity_m_s"});
        for (const auto& pt : traj.samples)
            csv += csv_line({casimir::format_double(pt.time),
                             casimir::format_double(pt.gap),
                             casimir::format_double(pt.velocity)});
        casimir::write_text_file(dir / "trajectory.csv", csv);
        out["trajectory"] = {{"contact", traj.contact},
                             {"contactTime_s", traj.contact ? json(traj.contact_time)
                                                            : json()},
                             {"energyDrift", traj.energy_drift},
                             {"finalGap_m", traj.final_gap},
                             {"finalVelocity_m_s", traj.final_velocity},
                             {"file", "trajectory.csv"}};
    }

    if (sweep) {
        const auto param = sweep_param == "d0" ? casimir::SweepParameter::RestGap
                                               : casimir::SweepParameter::SpringConstant;
        const auto diagram = casimir::hysteresis_sweep(cfg, param, from, to, steps);
        std::string csv = csv_line({"direction", "parameter", "lambda", "stableDelta",
                                    "collapsed"});
        auto dump_pass = [&](const char* name, const std::vector<casimir::SweepPoint>& pass) {
            for (const auto& pt : pass)
                csv += csv_line({name, casimir::format_double(pt.parameter),
                                 casimir::format_double(pt.lambda),
                                 pt.stable_delta ? casimir::format_double(*pt.stable_delta)
                                                 : "",
                                 pt.collapsed ? "true" : "false"});
        };
        dump_pass("forward", diagram.forward);
        dump_pass("backward", diagram.backward);
        casimir::write_text_file(dir / "sweep.csv", csv);
        json sweep_json{{"parameter", sweep_param},
                        {"from", from},
                        {"to", to},
                        {"steps", steps},
                        {"file", "sweep.csv"}};
        if (diagram.pull_in_parameter) {
            sweep_json["pullInParameter"] = *diagram.pull_in_parameter;
            sweep_json["pullInLambda"] = *diagram.pull_in_lambda;
        }
        out["sweep"] = sweep_json;
    }

    casimir::write_json_file(dir / "mems.json", out);
    write_manifest(dir, "mems",
                   {{"springConstant", cfg.spring_constant},
                    {"restGap", cfg.rest_gap},
                    {"plateArea", cfg.plate_area},
                    {"plateMass", cfg.plate_mass},
                    {"damping", cfg.damping},
                    {"simulate", simulate},
                    {"initialGap", initial_gap},
                    {"initialVelocity", initial_velocity},
                    {"duration", duration},
                    {"timestep", dt},
                    {"stride", stride},
                    {"sweep", sweep},
                    {"sweepParam", sweep_param},
                    {"from", from},
                    {"to", to},
                    {"steps", steps},
                    {"pressureGap", pressure_gap}});

    std::cout << "lambda = " << lambda << " (critical " << casimir::lambda_critical
              << "): " << (lambda < casimir::lambda_critical
                               ? "bistable"
                               : lambda == casimir::lambda_critical ? "marginal"
                                                                    : "collapse regime")
              << "\n";
    for (const auto& eq : eq_json)
        std::cout << "  equilibrium delta = " << eq["delta"].get<double>() << " ("
                  << eq["stability"].get<std::string>() << ")\n";
    std::cout << "artifacts in " << dir.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------------ cache --

int run_cache(const RunContext& ctx, const std::string& action) {
    casimir::PairDensityCache cache{fs::path(ctx.cache_dir)};
    if (action == "list") {
        for (const auto& key : cache.list())
            std::cout << key << "\n";
        return exit_ok;
    }
    if (action == "clear") {
        std::cout << "removed " << cache.clear() << " cached pair measures\n";
        return exit_ok;
    }
    throw casimir::domain_error("cache: action must be list or clear");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise-Casimir toolkit"};
    app.set_config("--config", "", "flat key=value config file; flags override");

    RunContext ctx;
    app.add_option("--run-dir", ctx.run_dir, "output directory (default runs/<subcommand>)");
    app.add_option("--workers", ctx.workers, "worker threads (never changes output bytes)")
        ->check(CLI::Range(1u, 64u));
    app.add_option("--cache-dir", ctx.cache_dir, "pair-measure cache directory");
    auto* version = app.add_flag("--version", "print version and pinned constants");

    // compare
    auto* compare = app.add_subcommand("compare", "pairwise vs exact deviation table");

    // pairwise
    auto* pairwise = app.add_subcommand("pairwise", "closed-form pairwise results");
    double pw_d = 1.0, pw_a = 1.0, pw_alpha = 1.0;
    std::string pw_eps = "inf";
    pairwise->add_option("--distance", pw_d, "separation / gap (reduced units)");
    pairwise->add_option("--radius", pw_a, "ball radius");
    pairwise->add_option("--alpha", pw_alpha, "static polarizability");
    pairwise->add_option("--epsilon", pw_eps, "dielectric constant or 'inf'");

    // pure-term
    auto* pure = app.add_subcommand("pure-term", "cutoff-series pure Casimir term");
    std::string pt_body = "ball", pt_eps = "inf", pt_method = "grid", pt_log = "auto";
    double pt_scale = 1.0, pt_slo = 0.02, pt_shi = 0.30;
    int pt_resolution = 256, pt_points = 24;
    std::int64_t pt_samples = 10'000'000;
    std::uint64_t pt_seed = 0;
    bool pt_zero_check = false;
    pure->add_option("--body", pt_body, "ball | cube | cylinder")->required();
    pure->add_option("--a", pt_scale, "scale length: radius (ball, cylinder) or side (cube)");
    pure->add_option("--epsilon", pt_eps, "dielectric constant or 'inf'");
    pure->add_option("--method", pt_method, "analytic | grid | mc");
    pure->add_option("--resolution", pt_resolution, "grid cells across the bounding box");
    pure->add_option("--samples", pt_samples, "Monte Carlo pair count");
    auto* seed_opt = pure->add_option("--seed", pt_seed, "RNG seed (required for mc)");
    pure->add_option("--s-min", pt_slo, "cutoff window start, units of a");
    pure->add_option("--s-max", pt_shi, "cutoff window end, units of a");
    pure->add_option("--s-points", pt_points, "log-spaced cutoff count");
    pure->add_option("--log-term", pt_log, "auto | on | off");
    pure->add_flag("--zero-check", pt_zero_check,
                   "cylinder: rerun at doubled resolution and test convergence to zero");

    // drag
    auto* drag = app.add_subcommand("drag", "Einstein drag force over a spectrum");
    std::string dg_spectrum = "vacuum", dg_file;
    double dg_T = 300.0, dg_factor = 1.0, dg_omega = 1e15, dg_b12 = 1.0, dg_p1 = 1.0,
           dg_p2 = 0.0, dg_v = 1.0;
    bool dg_thermal = false;
    drag->add_option("--spectrum", dg_spectrum, "vacuum | planck | scaled | csv");
    drag->add_option("--temperature", dg_T, "Planck temperature, K");
    drag->add_option("--factor", dg_factor, "scale factor for scaled vacuum");
    drag->add_option("--file", dg_file, "two-column CSV: omega [rad/s], rho [J s/m^3]");
    drag->add_option("--omega", dg_omega, "transition frequency, rad/s");
    drag->add_option("--b12", dg_b12, "Einstein absorption coefficient");
    drag->add_option("--p1", dg_p1, "lower-state occupation");
    drag->add_option("--p2", dg_p2, "upper-state occupation");
    drag->add_flag("--thermal", dg_thermal, "thermal occupations at --temperature");
    drag->add_option("--velocity", dg_v, "atom velocity, m/s");

    // unruh
    auto* unruh = app.add_subcommand("unruh", "Unruh-Davies conversion");
    double un_T = 0.0, un_a = 0.0;
    auto* un_t_opt = unruh->add_option("--temperature", un_T, "temperature, K");
    auto* un_a_opt = unruh->add_option("--acceleration", un_a, "proper acceleration, m/s^2");

    // cosmo
    auto* cosmo = app.add_subcommand("cosmo", "vacuum energy budget vs observation");
    double cf_cutoff = 1e-35;
    cosmo->add_option("--cutoff-length", cf_cutoff, "wavelength cutoff, m");

    // mems
    auto* mems = app.add_subcommand("mems", "anharmonic Casimir oscillator");
    casimir::OscillatorConfig mc_cfg;
    mc_cfg.spring_constant = 0.02;
    mc_cfg.rest_gap = 200e-9;
    mc_cfg.plate_area = 0.0;
    mc_cfg.plate_mass = 1e-9;
    bool mc_sim = false, mc_sweep = false;
    double mc_init_gap = -1.0, mc_init_v = 0.0, mc_duration = 0.0, mc_dt = 0.0;
    double mc_from = 0.0, mc_to = 0.0, mc_pressure_gap = 0.0;
    std::size_t mc_stride = 100;
    int mc_steps = 200;
    std::string mc_param = "k";
    mems->add_option("--k", mc_cfg.spring_constant, "spring constant, N/m");
    mems->add_option("--d0", mc_cfg.rest_gap, "rest gap, m");
    mems->add_option("--area", mc_cfg.plate_area, "plate area, m^2");
    mems->add_option("--mass", mc_cfg.plate_mass, "plate mass, kg");
    mems->add_option("--gamma", mc_cfg.damping, "damping, kg/s");
    mems->add_option("--contact-floor", mc_cfg.contact_floor_factor,
                     "contact event at d <= factor*d0");
    mems->add_flag("--simulate", mc_sim, "integrate a trajectory");
    mems->add_option("--initial-gap", mc_init_gap, "initial gap, m (default d0)");
    mems->add_option("--initial-velocity", mc_init_v, "initial velocity, m/s");
    mems->add_option("--duration", mc_duration, "simulated time, s");
    mems->add_option("--dt", mc_dt, "timestep, s");
    mems->add_option("--stride", mc_stride, "keep every n-th sample");
    mems->add_flag("--sweep", mc_sweep, "quasi-static hysteresis sweep");
    mems->add_option("--sweep-param", mc_param, "k | d0");
    mems->add_option("--from", mc_from, "sweep start value");
    mems->add_option("--to", mc_to, "sweep end value");
    mems->add_option("--steps", mc_steps, "sweep steps");
    mems->add_option("--pressure-gap", mc_pressure_gap, "report |pressure| at this gap, m");

    // cache
    auto* cache = app.add_subcommand("cache", "manage the pair-measure cache");
    std::string cache_action = "list";
    cache->add_option("action", cache_action, "list | clear");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const CLI::FileError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    if (*version) {
        std::cout << "casimir-toolkit " << casimir::toolkit_version << "\n"
                  << "constants (CODATA, 9 significant digits):\n"
                  << constants_json().dump(2) << "\n";
        return exit_ok;
    }

    try {
        if (*compare)
            return run_compare(ctx);
        if (*pairwise)
            return run_pairwise(ctx, pw_d, pw_a, pw_alpha, pw_eps);
        if (*pure) {
            if (pt_method == "mc" && seed_opt->count() == 0)
                throw casimir::domain_error(
                    "pure-term: --seed is required for the Monte Carlo method");
            return run_pure_term(ctx, pt_body, pt_scale, pt_eps, pt_method, pt_resolution,
                                 pt_samples, pt_seed, pt_slo, pt_shi, pt_points, pt_log,
                                 pt_zero_check);
        }
        if (*drag)
            return run_drag(ctx, dg_spectrum, dg_T, dg_factor, dg_file, dg_omega, dg_b12,
                            dg_p1, dg_p2, dg_thermal, dg_v);
        if (*unruh) {
            if ((un_t_opt->count() == 0) == (un_a_opt->count() == 0))
                throw casimir::domain_error(
                    "unruh: pass exactly one of --temperature, --acceleration");
            return run_unruh(ctx, un_t_opt->count() ? un_T : 0.0,
                             un_a_opt->count() ? un_a : 0.0);
        }
        if (*cosmo)
            return run_cosmo(ctx, cf_cutoff);
        if (*mems) {
            if (mc_init_gap < 0.0)
                mc_init_gap = mc_cfg.rest_gap;
            if (mc_sim && (mc_duration <= 0.0 || mc_dt <= 0.0))
                throw casimir::domain_error("mems: --simulate needs --duration and --dt");
            if (mc_sweep && (mc_from <= 0.0 || mc_to <= 0.0))
                throw casimir::domain_error("mems: --sweep needs --from and --to");
            return run_mems(ctx, mc_cfg, mc_sim, mc_init_gap, mc_init_v, mc_duration,
                            mc_dt, mc_stride, mc_sweep, mc_param, mc_from, mc_to,
                            mc_steps, mc_pressure_gap);
        }
        if (*cache)
            return run_cache(ctx, cache_action);
        std::cerr << app.help();
        return exit_usage;
    } catch (const casimir::fit_error& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return exit_fit;
    } catch (const casimir::capability_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return exit_domain;
    } catch (const casimir::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
