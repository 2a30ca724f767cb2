#include "shuttle/cli.hpp"

#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shuttle/budget.hpp"
#include "shuttle/calibration.hpp"
#include "shuttle/config.hpp"
#include "shuttle/constants.hpp"
#include "shuttle/ensemble.hpp"
#include "shuttle/fits.hpp"
#include "shuttle/io.hpp"
#include "shuttle/scaling.hpp"
#include "shuttle/spectrum.hpp"
#include "shuttle/survival.hpp"
#include "shuttle/waveform.hpp"

namespace shuttle::cli {

namespace {

using nlohmann::json;

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    io::write_text_atomic(path, content);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json fit_to_json(const infer::FitResult& fr) {
  json j;
  j["parameters"] = fr.parameters;
  j["sigmas"] = fr.sigmas;
  j["residual_norm"] = fr.residual_norm;
  j["converged"] = fr.converged;
  j["iterations"] = fr.iterations;
  j["notes"] = fr.notes;
  return j;
}

// Renames a parameter (and its sigma) with a unit scale, e.g. K -> uK.
void rescale_key(json& j, const std::string& from, const std::string& to,
                 double scale) {
  for (const char* block : {"parameters", "sigmas"}) {
    json& b = j[block];
    if (b.contains(from)) {
      b[to] = b[from].get<double>() * scale;
      b.erase(from);
    }
  }
}

std::vector<double> parse_list(const std::string& csv_list) {
  std::vector<double> out;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

struct CommonOpts {
  std::string config_path;
  std::string output_path;
  RunConfig config;

  void load() {
    if (!config_path.empty()) config = load_config(config_path);
  }
};

traj::MotionProfile pick_profile(const CommonOpts& c,
                                 const std::string& profile_flag) {
  if (!profile_flag.empty()) return traj::MotionProfile::parse(profile_flag);
  return c.config.require_profile();
}

json plan_block(const traj::MotionPlan& plan) {
  json j;
  j["profile"] = plan.profile.name();
  j["distance_um"] = plan.distance / 1e-6;
  j["duration_us"] = plan.duration / 1e-6;
  return j;
}

json trap_block(const phys::TrapConfig& trap) {
  json j;
  j["omega0_rad_s"] = trap.omega0();
  j["depth_uK"] = trap.depth_u0() * 1e6;
  j["x_zpf_m"] = phys::zero_point_length(trap);
  return j;
}

void add_traj(CLI::App& app) {
  auto* cmd = app.add_subcommand("traj", "Tabulate a profile and derivatives");
  auto opts = std::make_shared<CommonOpts>();
  auto profile = std::make_shared<std::string>();
  auto samples = std::make_shared<int>(0);
  auto max_deriv = std::make_shared<int>(2);
  cmd->add_option("--profile", *profile, "smoothstep:k or sinusoidal")
      ->required();
  cmd->add_option("--samples", *samples, "number of rows (>= 2)")->required();
  cmd->add_option("--max-deriv", *max_deriv, "highest derivative column");
  cmd->add_option("-o,--output", opts->output_path, "output CSV path");
  cmd->callback([opts, profile, samples, max_deriv] {
    if (*samples < 2)
      throw std::invalid_argument("traj: samples must be >= 2");
    if (*max_deriv < 0 || *max_deriv > 6)
      throw std::invalid_argument("traj: max-deriv must be in [0,6]");
    const traj::MotionProfile p = traj::MotionProfile::parse(*profile);
    std::vector<std::string> header = {"s", "value"};
    for (int d = 1; d <= *max_deriv; ++d)
      header.push_back("deriv" + std::to_string(d));
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < *samples; ++i) {
      const double s = static_cast<double>(i) / (*samples - 1);
      std::vector<double> row = {s, p.eval(s, 0)};
      for (int d = 1; d <= *max_deriv; ++d) row.push_back(p.eval(s, d));
      rows.push_back(std::move(row));
    }
    emit(opts->output_path, io::format_csv(header, rows));
  });
}

void add_heat(CLI::App& app) {
  auto* cmd = app.add_subcommand("heat", "Phonon gain of one plan");
  auto opts = std::make_shared<CommonOpts>();
  auto profile = std::make_shared<std::string>();
  auto distance_um = std::make_shared<double>(std::nan(""));
  auto duration_us = std::make_shared<double>(std::nan(""));
  cmd->add_option("--config", opts->config_path, "run config JSON")->required();
  cmd->add_option("--profile", *profile, "overrides config profile");
  cmd->add_option("--distance-um", *distance_um, "overrides config distance");
  cmd->add_option("--duration-us", *duration_us, "overrides config duration");
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, profile, distance_um, duration_us] {
    opts->load();
    const phys::TrapConfig& trap = opts->config.require_trap();
    const double dist = std::isnan(*distance_um)
                            ? opts->config.require_distance()
                            : *distance_um * 1e-6;
    const double dur = std::isnan(*duration_us)
                           ? opts->config.require_duration()
                           : *duration_us * 1e-6;
    const auto plan = traj::make_plan(pick_profile(*opts, *profile), dist, dur);
    const auto heat = spectral::delta_n(plan, trap);
    json j;
    j["delta_n"] = heat.delta_n;
    j["delta_t_uK"] = heat.delta_t * 1e6;
    j["spectrum_at_omega0"] = {{"re", heat.spectrum_at_omega0.real()},
                               {"im", heat.spectrum_at_omega0.imag()},
                               {"abs", std::abs(heat.spectrum_at_omega0)}};
    j["trap"] = trap_block(trap);
    j["plan"] = plan_block(plan);
    emit(opts->output_path, dump(j));
  });
}

void add_scaling_study(CLI::App& app) {
  auto* cmd = app.add_subcommand("scaling-study",
                                 "Envelope exponent of heating vs time");
  auto opts = std::make_shared<CommonOpts>();
  auto profile = std::make_shared<std::string>();
  auto distance_um = std::make_shared<double>(std::nan(""));
  auto times_us = std::make_shared<std::string>();
  auto tmin_us = std::make_shared<double>(0.0);
  auto tmax_us = std::make_shared<double>(0.0);
  auto count = std::make_shared<int>(12);
  auto csv_path = std::make_shared<std::string>();
  cmd->add_option("--config", opts->config_path, "run config JSON")->required();
  cmd->add_option("--profile", *profile, "overrides config profile");
  cmd->add_option("--distance-um", *distance_um, "overrides config distance");
  cmd->add_option("--times-us", *times_us, "comma-separated times");
  cmd->add_option("--tmin-us", *tmin_us, "log-spaced range start");
  cmd->add_option("--tmax-us", *tmax_us, "log-spaced range end");
  cmd->add_option("--num", *count, "log-spaced point count");
  cmd->add_option("--csv", *csv_path, "also write samples as CSV");
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, profile, distance_um, times_us, tmin_us, tmax_us, count,
                 csv_path] {
    opts->load();
    const phys::TrapConfig& trap = opts->config.require_trap();
    const double dist = std::isnan(*distance_um)
                            ? opts->config.require_distance()
                            : *distance_um * 1e-6;
    std::vector<double> times;
    if (!times_us->empty()) {
      for (double t : parse_list(*times_us)) times.push_back(t * 1e-6);
    } else {
      if (!(*tmin_us > 0.0) || !(*tmax_us > *tmin_us) || *count < 6)
        throw std::invalid_argument(
            "scaling-study: give --times-us or --tmin-us/--tmax-us/--num");
      for (int i = 0; i < *count; ++i)
        times.push_back(1e-6 * *tmin_us *
                        std::pow(*tmax_us / *tmin_us,
                                 static_cast<double>(i) / (*count - 1)));
    }
    const auto study = spectral::scaling_study(
        pick_profile(*opts, *profile), trap, dist, times);
    json j;
    j["exponent"] = study.exponent;
    j["exponent_stderr"] = study.exponent_stderr;
    j["distance_um"] = dist / 1e-6;
    j["envelope_points"] = study.envelope.size();
    json samples = json::array();
    for (const auto& s : study.samples)
      samples.push_back({{"t_us", s.duration / 1e-6}, {"delta_n", s.delta_n}});
    j["samples"] = samples;
    emit(opts->output_path, dump(j));
    if (!csv_path->empty()) {
      std::vector<std::vector<double>> rows;
      for (const auto& s : study.samples)
        rows.push_back({s.duration / 1e-6, s.delta_n});
      io::write_text_atomic(*csv_path,
                            io::format_csv({"t_us", "delta_n"}, rows));
    }
  });
}

void add_mc(CLI::App& app) {
  auto* cmd = app.add_subcommand("mc", "Monte-Carlo survival oracle");
  auto opts = std::make_shared<CommonOpts>();
  auto delta_t_uK = std::make_shared<double>(std::nan(""));
  auto t0_uK = std::make_shared<double>(0.0);
  auto p0 = std::make_shared<double>(1.0);
  auto cycles = std::make_shared<long>(0);
  auto samples = std::make_shared<long>(0);
  auto seed = std::make_shared<std::uint64_t>(0);
  cmd->add_option("--config", opts->config_path, "run config JSON")->required();
  cmd->add_option("--delta-t-uK", *delta_t_uK,
                  "per-cycle heating; computed from the config plan if absent");
  cmd->add_option("--t0-uK", *t0_uK, "initial temperature")->required();
  cmd->add_option("--p0", *p0, "initial survival probability");
  cmd->add_option("--cycles", *cycles, "transfer cycles")->required();
  cmd->add_option("--samples", *samples, "overrides config samples");
  auto* seed_flag = cmd->add_option("--seed", *seed, "overrides config seed");
  cmd->add_option("-o,--output", opts->output_path, "output CSV path");
  cmd->callback([opts, delta_t_uK, t0_uK, p0, cycles, samples, seed,
                 seed_flag] {
    opts->load();
    const phys::TrapConfig& trap = opts->config.require_trap();
    const long n_samples =
        *samples > 0 ? *samples : opts->config.samples.value_or(0);
    const std::uint64_t run_seed = seed_flag->count() > 0
                                       ? *seed
                                       : opts->config.seed.value_or(0);
    double dt;
    if (std::isnan(*delta_t_uK)) {
      const auto plan = traj::make_plan(opts->config.require_profile(),
                                        opts->config.require_distance(),
                                        opts->config.require_duration());
      dt = spectral::delta_n(plan, trap).delta_t;
    } else {
      dt = *delta_t_uK * 1e-6;
    }
    const auto curve = oracle::monte_carlo_survival(
        dt, trap, *t0_uK * 1e-6, *p0, *cycles, n_samples, run_seed);
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (const auto& point : curve)
      rows.push_back({static_cast<double>(point.cycle), point.survival,
                      point.std_error});
    emit(opts->output_path,
         io::format_csv({"cycle", "survival", "stderr"}, rows));
  });
}

void add_fit_survival(CLI::App& app) {
  auto* cmd = app.add_subcommand("fit-survival",
                                 "Fit the truncated-Boltzmann survival law");
  auto opts = std::make_shared<CommonOpts>();
  auto data = std::make_shared<std::string>();
  auto t0_uK = std::make_shared<double>(0.0);
  auto u0_uK = std::make_shared<double>(0.0);
  cmd->add_option("--data", *data, "CSV: n,survival[,trials]")->required();
  cmd->add_option("--t0-uK", *t0_uK, "fixed initial temperature")->required();
  cmd->add_option("--u0-uK", *u0_uK, "fixed trap depth")->required();
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, data, t0_uK, u0_uK] {
    const auto points = io::load_survival_points(io::read_csv(*data));
    const auto fit =
        infer::fit_survival(points, *t0_uK * 1e-6, *u0_uK * 1e-6);
    json j = fit_to_json(fit.fit);
    rescale_key(j, "delta_t", "delta_t_uK", 1e6);
    j["fixed"] = {{"t0_uK", *t0_uK}, {"u0_uK", *u0_uK}};
    emit(opts->output_path, dump(j));
  });
}

void add_fit_scaling(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "fit-scaling", "Fit survival vs transport time to A t^-p heating");
  auto opts = std::make_shared<CommonOpts>();
  auto data = std::make_shared<std::string>();
  auto segments = std::make_shared<long>(51);
  auto t0_uK = std::make_shared<double>(0.0);
  auto u0_uK = std::make_shared<double>(0.0);
  auto p0 = std::make_shared<double>(1.0);
  auto fix_p = std::make_shared<double>(std::nan(""));
  cmd->add_option("--data", *data, "CSV: t_us,survival[,trials]")->required();
  cmd->add_option("--segments", *segments, "one-way segments per point");
  cmd->add_option("--t0-uK", *t0_uK, "initial temperature")->required();
  cmd->add_option("--u0-uK", *u0_uK, "trap depth")->required();
  cmd->add_option("--p0", *p0, "initial survival");
  cmd->add_option("--fix-p", *fix_p, "hold the exponent fixed, fit only A");
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, data, segments, t0_uK, u0_uK, p0, fix_p] {
    auto points = io::load_timed_survival_points(io::read_csv(*data));
    infer::PowerLawContext ctx{*segments, *t0_uK * 1e-6, *u0_uK * 1e-6, *p0};
    infer::FitResult fr;
    if (std::isnan(*fix_p)) {
      fr = infer::fit_power_law(points, ctx);
    } else {
      fr = infer::fit_power_law_fixed_exponent(points, ctx, *fix_p);
    }
    json j = fit_to_json(fr);
    j["segments"] = *segments;
    emit(opts->output_path, dump(j));
  });
}

void add_fit_mis(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "fit-mis", "Linear fit of heating vs squared trap mismatch");
  auto opts = std::make_shared<CommonOpts>();
  auto data = std::make_shared<std::string>();
  auto basic_uK = std::make_shared<double>(0.156);
  cmd->add_option("--config", opts->config_path, "run config JSON (trap)")
      ->required();
  cmd->add_option("--data", *data, "CSV: delta_sq_nm2,delta_t_uK")->required();
  cmd->add_option("--basic-uK", *basic_uK,
                  "well-aligned exchange heating (both transfers)");
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, data, basic_uK] {
    opts->load();
    const auto points = io::load_mis_points(io::read_csv(*data));
    const auto fr =
        infer::fit_mis_linear(points, opts->config.require_trap(), *basic_uK);
    emit(opts->output_path, dump(fit_to_json(fr)));
  });
}

void add_fit_gaussian(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("fit-gaussian", "2D Gaussian trap-center calibration");
  auto opts = std::make_shared<CommonOpts>();
  auto data = std::make_shared<std::string>();
  cmd->add_option("--data", *data, "CSV: fx_mhz,fy_mhz,survival[,trials]")
      ->required();
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, data] {
    infer::CalibrationScan scan;
    scan.grid = io::load_scan_points(io::read_csv(*data));
    const auto fr = infer::fit_gaussian2d(scan);
    json j = fit_to_json(fr);
    j["center"] = {{"fx_mhz", scan.center_fx_mhz},
                   {"fy_mhz", scan.center_fy_mhz}};
    emit(opts->output_path, dump(j));
  });
}

void add_fit_fidelity(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("fit-fidelity", "Exponential fidelity-decay fit");
  auto opts = std::make_shared<CommonOpts>();
  auto data = std::make_shared<std::string>();
  cmd->add_option("--data", *data, "CSV: n,fidelity[,stderr]")->required();
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, data] {
    const auto points = io::load_fidelity_points(io::read_csv(*data));
    emit(opts->output_path, dump(fit_to_json(infer::fit_fidelity_decay(points))));
  });
}

void add_budget(CLI::App& app) {
  auto* cmd = app.add_subcommand("budget",
                                 "Inter-site transfer heating decomposition");
  auto opts = std::make_shared<CommonOpts>();
  auto basic_uK = std::make_shared<double>(0.0);
  auto alpha = std::make_shared<double>(0.0);
  auto dx_start_nm = std::make_shared<double>(0.0);
  auto dx_target_nm = std::make_shared<double>(0.0);
  auto ref_dt_uK = std::make_shared<double>(0.0);
  auto ref_d_um = std::make_shared<double>(0.0);
  auto ref_t_us = std::make_shared<double>(0.0);
  auto d_um = std::make_shared<double>(0.0);
  auto t_us = std::make_shared<double>(0.0);
  auto scaling = std::make_shared<std::string>("smoothstep:3");
  cmd->add_option("--config", opts->config_path, "run config JSON (trap)")
      ->required();
  cmd->add_option("--basic-uK", *basic_uK, "well-aligned exchange total");
  cmd->add_option("--alpha", *alpha, "non-adiabaticity parameter");
  cmd->add_option("--dx-start-nm", *dx_start_nm, "start trap mismatch");
  cmd->add_option("--dx-target-nm", *dx_target_nm, "target trap mismatch");
  cmd->add_option("--ref-dt-uK", *ref_dt_uK, "reference transport heating")
      ->required();
  cmd->add_option("--ref-d-um", *ref_d_um, "reference distance")->required();
  cmd->add_option("--ref-t-us", *ref_t_us, "reference duration")->required();
  cmd->add_option("--d-um", *d_um, "transport distance")->required();
  cmd->add_option("--t-us", *t_us, "transport duration")->required();
  cmd->add_option("--scaling", *scaling,
                  "smoothstep:k or sinusoidal scaling law");
  cmd->add_option("-o,--output", opts->output_path, "output JSON path");
  cmd->callback([opts, basic_uK, alpha, dx_start_nm, dx_target_nm, ref_dt_uK,
                 ref_d_um, ref_t_us, d_um, t_us, scaling] {
    opts->load();
    spectral::TransportScaling law = spectral::TransportScaling::sinusoidal();
    if (*scaling != "sinusoidal") {
      const auto profile = traj::MotionProfile::parse(*scaling);
      law = spectral::TransportScaling::smoothstep(profile.order());
    }
    const spectral::TransportReference ref{*ref_dt_uK * 1e-6, *ref_d_um * 1e-6,
                                           *ref_t_us * 1e-6};
    const auto b = spectral::heating_budget(
        opts->config.require_trap(), *basic_uK * 1e-6, *alpha,
        *dx_start_nm * 1e-9, *dx_target_nm * 1e-9, ref, *d_um * 1e-6,
        *t_us * 1e-6, law);
    json j;
    j["basic_1_uK"] = b.basic_1 * 1e6;
    j["mis_1_uK"] = b.mis_1 * 1e6;
    j["transport_uK"] = b.transport * 1e6;
    j["basic_2_uK"] = b.basic_2 * 1e6;
    j["mis_2_uK"] = b.mis_2 * 1e6;
    j["total_uK"] = b.total * 1e6;
    j["alpha"] = b.alpha;
    j["time_exponent"] = law.time_exponent();
    emit(opts->output_path, dump(j));
  });
}

void add_waveform(CLI::App& app) {
  auto* cmd = app.add_subcommand("waveform",
                                 "Compile control waveforms to CSV");
  auto opts = std::make_shared<CommonOpts>();
  auto kind = std::make_shared<std::string>();
  auto profile = std::make_shared<std::string>();
  auto duration_us = std::make_shared<double>(std::nan(""));
  auto rate_hz = std::make_shared<double>(0.0);
  auto f_start = std::make_shared<double>(std::nan(""));
  auto f_end = std::make_shared<double>(std::nan(""));
  auto hold_us = std::make_shared<double>(0.0);
  cmd->add_option("--config", opts->config_path, "run config JSON");
  cmd->add_option("--kind", *kind, "amplitude or sweep")->required();
  cmd->add_option("--profile", *profile, "overrides config profile");
  cmd->add_option("--duration-us", *duration_us, "overrides config duration");
  cmd->add_option("--rate-hz", *rate_hz, "sample rate")->required();
  cmd->add_option("--fstart-mhz", *f_start, "sweep start frequency");
  cmd->add_option("--fend-mhz", *f_end, "sweep end frequency");
  cmd->add_option("--hold-us", *hold_us, "constant tail after the ramp");
  cmd->add_option("-o,--output", opts->output_path, "output CSV path");
  cmd->callback([opts, kind, profile, duration_us, rate_hz, f_start, f_end,
                 hold_us] {
    opts->load();
    const traj::MotionProfile p = pick_profile(*opts, *profile);
    const double dur = std::isnan(*duration_us)
                           ? opts->config.require_duration()
                           : *duration_us * 1e-6;
    wave::WaveformTable table;
    if (*kind == "amplitude") {
      table = wave::compile_amplitude_waveforms(p, dur, *rate_hz);
    } else if (*kind == "sweep") {
      if (std::isnan(*f_start) || std::isnan(*f_end))
        throw std::invalid_argument(
            "waveform: sweep needs --fstart-mhz and --fend-mhz");
      table = wave::compile_frequency_sweep(p, *f_start, *f_end, dur, *rate_hz);
    } else {
      throw std::invalid_argument("waveform: kind must be amplitude or sweep");
    }
    if (*hold_us > 0.0) table = wave::with_hold_tail(table, *hold_us * 1e-6);

    const bool sweep = !table.aod_freq_mhz.empty();
    std::vector<std::string> header = {"t_s", "m_amp", "s_amp"};
    if (sweep) header.push_back("aod_f_mhz");
    std::vector<std::vector<double>> rows;
    rows.reserve(table.time.size());
    for (std::size_t i = 0; i < table.time.size(); ++i) {
      std::vector<double> row = {table.time[i], table.m_amp[i], table.s_amp[i]};
      if (sweep) row.push_back(table.aod_freq_mhz[i]);
      rows.push_back(std::move(row));
    }
    emit(opts->output_path, io::format_csv(header, rows));
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Tweezer atom-shuttling simulation and calibration toolkit"};
  app.require_subcommand(1);
  add_traj(app);
  add_heat(app);
  add_scaling_study(app);
  add_mc(app);
  add_fit_survival(app);
  add_fit_scaling(app);
  add_fit_mis(app);
  add_fit_gaussian(app);
  add_fit_fidelity(app);
  add_budget(app);
  add_waveform(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("shuttle-sim");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace shuttle::cli
