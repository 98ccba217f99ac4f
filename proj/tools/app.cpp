// Copyright 2026 The cqedlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "app.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cqed/config.hpp"
#include "cqed/csv.hpp"
#include "cqed/errors.hpp"
#include "cqed/experiments.hpp"
#include "cqed/validate.hpp"
#include "cqed/version.hpp"

namespace cqedlab {

namespace {

using namespace cqed;

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  std::ostream& out;

  CsvMetadata metadata() const {
    CsvMetadata meta;
    meta.emplace_back("seed", std::to_string(config.seed));
    for (auto& kv : config.echo()) meta.push_back(kv);
    return meta;
  }

  void emit(const ExperimentResult& result) const {
    const auto path = out_dir / csv_file_name(result);
    emit_csv(result, metadata(), path);
    out << "wrote " << path.string() << "\n";
  }

  void summary(const std::string& title, const std::vector<std::pair<std::string, std::string>>& rows) const {
    std::ostringstream os;
    os << "cqedlab " << tool_version << " : " << title << "\n\n";
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows) {
      os << "  " << k << std::string(width - k.size(), ' ') << " = " << v << "\n";
    }
    os << "\nconfiguration\n";
    os << "  seed = " << config.seed << "\n";
    for (const auto& [k, v] : config.echo()) os << "  " << k.substr(7) << " = " << v << "\n";
    write_atomic(out_dir / "summary.txt", os.str());
    for (const auto& [k, v] : rows) out << k << " = " << v << "\n";
  }
};

QuantumState initial_state(const RunConfig& config) {
  const auto space = build_space(config.setup.params.fock_cutoff);
  Vector psi = Vector::Zero(space.total_dim());
  if (config.initial_state == "a") {
    psi(space.index(Level::a, 0)) = 1.0;
  } else if (config.initial_state == "b") {
    psi(space.index(Level::b, 0)) = 1.0;
  } else {
    psi(space.index(Level::a, 0)) = M_SQRT1_2;
    psi(space.index(Level::b, 0)) = M_SQRT1_2;
  }
  return QuantumState::ket(space, psi);
}

int cmd_validate(std::ostream& out) {
  bool all = true;
  for (const auto& id : analytic_case_ids()) {
    const ValidationReport rep = validate_analytic(id);
    all = all && rep.pass;
    out << (rep.pass ? "PASS " : "FAIL ") << rep.case_id << "  error " << num(rep.max_error, 3)
        << " (limit " << num(rep.threshold, 3) << ")  " << num(rep.runtime_s, 3) << " s\n";
  }
  return all ? exit_ok : exit_other;
}

void cmd_single_photon(const Context& ctx) {
  const ProtocolSetup setup = make_setup(ctx.config);
  const EmissionRecord rec = run_single_photon(setup, initial_state(ctx.config));
  ctx.emit(rec);
  ctx.summary("single-photon", {{"initial_state", ctx.config.initial_state},
                                {"emission_probability", num(rec.emission_probability)}});
}

void cmd_absorb(const Context& ctx) {
  const ProtocolSetup setup = make_setup(ctx.config);
  AbsorptionSet set;
  set.records.push_back(run_absorption(setup, setup.schedule.t1, true));
  set.records.push_back(run_absorption(setup, 0.0, false));
  ctx.emit(set);
  const double p_a = set.records[0].p, p_i = set.records[1].p;
  ctx.summary("absorb", {{"t1_s", num(setup.schedule.t1)},
                         {"p_a", num(p_a)},
                         {"p_i", num(p_i)},
                         {"r", p_i > 0.0 ? num(p_a / p_i) : "undefined"},
                         {"zeta", num(p_a / setup.n_bar_in)},
                         {"detection_prob_a", num(set.records[0].detection_prob)},
                         {"detection_prob_i", num(set.records[1].detection_prob)},
                         {"kappa_loss_over_kappa", num(setup.params.kappa_loss / setup.params.kappa())}});
}

void cmd_sweep(const Context& ctx) {
  const ProtocolSetup setup = make_setup(ctx.config);
  const SweepResult res =
      sweep_arrival(setup, ctx.config.t1_grid, ctx.config.n_traj, ctx.config.seed);
  ctx.emit(res);
  std::size_t best = 0;
  for (std::size_t k = 1; k < res.r.size(); ++k) {
    if (res.r[k] > res.r[best]) best = k;
  }
  ctx.summary("sweep", {{"p_i", num(res.p_i)},
                        {"p_a_at_peak", num(res.p_a[best])},
                        {"r_max", num(res.r[best])},
                        {"t1_at_r_max_s", num(res.t1[best])},
                        {"r_c_at_peak", num(res.r_c[best])},
                        {"r_i_at_peak", num(res.r_i[best])},
                        {"n_traj", std::to_string(res.n_traj)}});
}

void cmd_fringe(const Context& ctx) {
  const ProtocolSetup setup = make_setup(ctx.config);
  const FringeResult res = fringe_experiment(setup, ctx.config.theta_grid, ctx.config.window);
  ctx.emit(res);
  const double v_est = overlap_estimate(setup, ctx.config.window);
  ctx.summary("fringe", {{"v", num(res.adiabatic.fit.v)},
                         {"sigma_v", num(res.adiabatic.fit.sigma_v)},
                         {"phi", num(res.adiabatic.fit.phi)},
                         {"v_incoherent", num(res.incoherent.fit.v)},
                         {"v_overlap_estimate", num(v_est)},
                         {"window_s", num(res.window)},
                         {"window_center_s", num(res.window_center)}});
}

void cmd_efficiency(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const SystemParams& mirrors = c.setup.params;
  const int pol = c.polarization_modes;
  const double zeta_max =
      efficiency_budget(mirrors.kappa_in, mirrors.kappa_out, mirrors.kappa_loss, pol);
  std::vector<std::pair<std::string, std::string>> rows = {
      {"zeta_max", num(zeta_max)}, {"polarization_modes", std::to_string(pol)}};
  if (c.setup.calibrate) {
    const ProtocolSetup setup = make_setup(c);
    const SystemParams& p = setup.params;
    const double p_a = run_absorption(setup, setup.schedule.t1, true, false).p;
    rows.emplace_back("zeta_max_calibrated",
                      num(efficiency_budget(p.kappa_in, p.kappa_out, p.kappa_loss, pol)));
    rows.emplace_back("zeta_max_calibrated_single_polarization",
                      num(efficiency_budget(p.kappa_in, p.kappa_out, p.kappa_loss, 1)));
    rows.emplace_back("zeta_simulated", num(p_a / setup.n_bar_in));
  }
  ctx.summary("efficiency", rows);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity QED single-photon absorption and emission simulator", "cqedlab"};
  app.set_version_flag("--version", std::string(cqed::tool_version));
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> n_traj;
  app.add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "override a configuration key (key=value)")->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--workers", workers, "OpenMP worker threads");
  app.add_option("--n-traj", n_traj, "trajectories per grid point");

  const char* names[][2] = {
      {"validate", "closed-form checks of the master-equation integrator"},
      {"single-photon", "photon emission driven by Omega_2"},
      {"absorb", "adiabatic and incoherent absorption of lambda_1"},
      {"sweep", "transfer ratio r versus lambda_1 arrival time"},
      {"fringe", "emitted photon number versus lambda_2 phase"},
      {"efficiency", "transfer efficiency budget"},
  };
  for (auto& n : names) app.add_subcommand(n[0], n[1])->fallthrough();

  std::vector<std::string> argv_store{"cqedlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << cqed::tool_version << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "cqedlab: " << e.what() << "\n";
    return exit_config;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    if (sub == "validate") return cmd_validate(out);

    std::vector<std::string> overrides = sets;
    if (!out_dir.empty()) overrides.push_back("output_dir=" + out_dir);
    if (seed) overrides.push_back("seed=" + std::to_string(*seed));
    if (workers) overrides.push_back("workers=" + std::to_string(*workers));
    if (n_traj) overrides.push_back("n_traj=" + std::to_string(*n_traj));
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;

    Context ctx{load_config(file, overrides), {}, out};
    ctx.out_dir = ctx.config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError(ctx.out_dir.string(), "cannot create output directory");

    if (sub == "single-photon") cmd_single_photon(ctx);
    if (sub == "absorb") cmd_absorb(ctx);
    if (sub == "sweep") cmd_sweep(ctx);
    if (sub == "fringe") cmd_fringe(ctx);
    if (sub == "efficiency") cmd_efficiency(ctx);
    return exit_ok;
  } catch (const ConfigError& e) {
    err << "cqedlab: configuration error: " << e.what() << "\n";
    return exit_config;
  } catch (const IntegrationFailure& e) {
    err << "cqedlab: " << sub << ": integration failure: " << e.what() << "\n";
    return exit_integration;
  } catch (const AccuracyFailure& e) {
    err << "cqedlab: " << sub << ": accuracy failure: " << e.what() << "\n";
    return exit_integration;
  } catch (const CalibrationFailure& e) {
    err << "cqedlab: " << sub << ": calibration failure: " << e.what() << "\n";
    return exit_calibration;
  } catch (const std::exception& e) {
    err << "cqedlab: " << sub << ": " << e.what() << "\n";
    return exit_other;
  }
}

}  // namespace cqedlab
