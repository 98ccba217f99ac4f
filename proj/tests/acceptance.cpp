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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "cqed/analysis.hpp"
#include "cqed/experiments.hpp"
#include "cqed/master.hpp"
#include "cqed/trajectories.hpp"
#include "cqed/validate.hpp"

using namespace cqed;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

// Runs a criterion body; exceptions count as failure.
void criterion(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  const auto t0 = Clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  detail += " (" + fmt("%.1f", seconds_since(t0)) + " s)";
  report(id, pass, title, detail);
}

SetupOptions options_with_cutoff(int cutoff) {
  SetupOptions o;
  o.params.fock_cutoff = cutoff;
  return o;
}

// Scalars shared by the sweep, fringe and efficiency criteria for one cutoff.
struct Observables {
  ProtocolSetup setup;
  std::vector<double> t1;
  std::vector<double> r;
  std::vector<double> p_a;
  double p_i = 0.0;
  double v200 = 0.0, v1000 = 0.0, v200_off = 0.0, v1000_off = 0.0;
  FringeResult fringe200, fringe1000;
  double zeta = 0.0;
  double fringe_runtime = 0.0;
};

Observables observe(int cutoff, int n_traj, SweepResult* sweep_out = nullptr) {
  Observables o;
  o.setup = calibrated_setup(options_with_cutoff(cutoff));
  o.t1 = uniform_grid(-2100e-9, 2100e-9, 15);
  const SweepResult sweep = sweep_arrival(o.setup, o.t1, n_traj, 1);
  o.r = sweep.r;
  o.p_a = sweep.p_a;
  o.p_i = sweep.p_i;
  if (sweep_out) *sweep_out = sweep;
  const auto theta = phase_grid(16);
  const auto t0 = Clock::now();
  o.fringe200 = fringe_experiment(o.setup, theta, 200e-9);
  o.fringe1000 = fringe_experiment(o.setup, theta, 1000e-9);
  o.fringe_runtime = seconds_since(t0);
  o.v200 = o.fringe200.adiabatic.fit.v;
  o.v1000 = o.fringe1000.adiabatic.fit.v;
  o.v200_off = o.fringe200.incoherent.fit.v;
  o.v1000_off = o.fringe1000.incoherent.fit.v;
  o.zeta = run_absorption(o.setup, 0.0, true, false).p / o.setup.n_bar_in;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct RandomEnvelope {
  std::vector<double> center, width;
  std::vector<Complex> coef;
  Complex operator()(double t) const {
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < center.size(); ++k) {
      const double x = (t - center[k]) / width[k];
      sum += coef[k] * std::exp(-x * x);
    }
    return sum;
  }
};

// Composite Simpson on 2e5 panels.
double simpson_overlap(const Envelope& a, const Envelope& b, double lo, double hi) {
  const int n = 200000;
  const double h = (hi - lo) / n;
  Complex cross(0.0, 0.0);
  double na = 0.0, nb = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double t = lo + h * k;
    const Complex x = a(t), y = b(t);
    cross += w * std::conj(x) * y;
    na += w * std::norm(x);
    nb += w * std::norm(y);
  }
  return 2.0 * std::abs(cross) / (na + nb);
}

}  // namespace

int main() {
  criterion(1, "analytic oracle suite", [](std::string& d) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (const auto& id : analytic_case_ids()) {
      const ValidationReport rep = validate_analytic(id);
      ok = ok && rep.pass;
      d += id + " err " + fmt("%.2e", rep.max_error) + " (< " + fmt("%.0e", rep.threshold) + "); ";
    }
    const double runtime = seconds_since(t0);
    d += "runtime " + fmt("%.2f", runtime) + " s (< 5)";
    return ok && runtime < 5.0;
  });

  criterion(2, "ideal adiabatic transfer", [](std::string& d) {
    const auto t0 = Clock::now();
    SystemParams p;
    p.kappa_in = p.kappa_out = p.kappa_loss = 0.0;
    p.gamma_a = p.gamma_b = 0.0;
    p.delta2 = 0.0;
    p.fock_cutoff = 1;
    const double ramp = 200.0 / p.g;
    const double omega_max = 100.0 * p.g;
    // Dark-state angle tan(theta) = omega / 2g advanced at a constant rate.
    const double theta_max = std::atan(omega_max / (2.0 * p.g));
    auto controls = [&](double t) {
      const double theta = theta_max * std::clamp(t / ramp, 0.0, 1.0);
      return Controls{2.0 * p.g * std::tan(theta), 0.0, {}};
    };
    IntegrationOptions opts;
    opts.sample_dt = 0.05 / p.g;
    const auto space = build_space(1);
    const auto run = integrate_master(QuantumState::basis(space, Level::a, 0), controls, p, 0.0,
                                      ramp, opts);
    const int ib = space.index(Level::b, 1);
    const double fidelity = run.final_state.rho()(ib, ib).real();
    const double pe = *std::max_element(run.series.P_e.begin(), run.series.P_e.end());
    const double runtime = seconds_since(t0);
    d = "ramp " + fmt("%.0f", ramp * p.g) + "/g, fidelity " + fmt("%.6f", fidelity) +
        " (>= 0.999), max P_e " + fmt("%.2e", pe) + " (< 1e-3), runtime " + fmt("%.2f", runtime) +
        " s (< 5)";
    return fidelity >= 0.999 && pe < 1e-3 && runtime < 5.0;
  });

  criterion(3, "state sanity and photon bookkeeping", [](std::string& d) {
    ProtocolSetup setup = calibrated_setup(SetupOptions{});
    setup.integration.track_sanity = true;
    double trace = 0.0, herm = 0.0, mineig = 0.0;
    auto absorb = [&](const TimeSeries& s) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        trace = std::max(trace, s.trace_residual[k]);
        herm = std::max(herm, s.hermiticity_residual[k]);
        mineig = std::min(mineig, s.min_eigenvalue[k]);
      }
    };
    const auto space = build_space(setup.params.fock_cutoff);
    const auto a0 = QuantumState::basis(space, Level::a, 0);
    const EmissionRecord emission = run_single_photon(setup, a0);
    absorb(emission.series);
    int runs = 1;
    for (double t1 : {-2.1e-6, -300e-9, 0.0, 300e-9, 2.1e-6}) {
      for (bool omega1 : {true, false}) {
        ScheduleConfig c = setup.schedule;
        c.omega1_on = omega1;
        c.lambda1_on = true;
        c.t1 = t1;
        absorb(integrate_master(QuantumState::basis(space, Level::b, 0), make_schedule(c),
                                setup.params, absorption_start(setup, t1),
                                readout_time(setup, t1) + setup.readout_window, setup.integration)
                   .series);
        ++runs;
      }
    }
    for (double theta : {0.0, 2.0, 4.0}) {
      ScheduleConfig c = setup.schedule;
      c.omega1_on = c.omega2_on = c.lambda1_on = c.lambda2_on = true;
      c.theta = theta;
      absorb(integrate_master(QuantumState::basis(space, Level::b, 0), make_schedule(c),
                              setup.params, absorption_start(setup, 0.0), 2.3e-6, setup.integration)
                 .series);
      ++runs;
    }
    // Excitation N = <n> + P_e + P_a leaves through the cavity and the e -> b branch.
    const TimeSeries& s = emission.series;
    const SystemParams& p = setup.params;
    double out = 0.0;
    for (std::size_t k = 1; k < s.size(); ++k) {
      out += 0.5 * (s.t[k] - s.t[k - 1]) *
             (2.0 * p.kappa() * (s.n_cav[k] + s.n_cav[k - 1]) +
              2.0 * p.gamma_b * (s.P_e[k] + s.P_e[k - 1]));
    }
    const double closure = std::abs(out + s.n_cav.back() + s.P_e.back() + s.P_a.back() - 1.0);
    d = std::to_string(runs) + " runs: max |Tr-1| " + fmt("%.1e", trace) + " (< 1e-8), herm " +
        fmt("%.1e", herm) + " (< 1e-10), min eig " + fmt("%.1e", mineig) +
        " (>= -1e-8), bookkeeping " + fmt("%.1e", closure) + " (< 1e-4)";
    return trace < 1e-8 && herm < 1e-10 && mineig >= -1e-8 && closure < 1e-4;
  });

  criterion(4, "trajectory/master equivalence", [](std::string& d) {
    const auto t0 = Clock::now();
    const ProtocolSetup setup = calibrated_setup(SetupOptions{});
    const int n = 10000;
    const double master = run_absorption(setup, 0.0, true, false).p;
    const TrajectoryEnsemble ens = absorption_trajectories(setup, 0.0, true, n, 2024);
    double m = 0.0, m2 = 0.0;
    for (const auto& rec : ens.records) {
      m += rec.final.a;
      m2 += rec.final.a * rec.final.a;
    }
    m /= n;
    const double se = std::sqrt((m2 / n - m * m) / (n - 1));
    const bool pop_ok = std::abs(m - master) <= 3.0 * se;

    SystemParams bare = setup.params;
    bare.g = 0.0;
    bare.gamma_a = bare.gamma_b = 0.0;
    const auto space = build_space(bare.fock_cutoff);
    const auto decay = run_trajectories(QuantumState::basis(space, Level::b, 1),
                                        [](double) { return Controls{}; }, bare, 0.0,
                                        30.0 / bare.kappa(), n, 77);
    int out = 0;
    for (const auto& rec : decay.records) {
      out += std::count_if(rec.jumps.begin(), rec.jumps.end(),
                           [](const JumpRecord& j) { return j.channel == Channel::out; });
    }
    const double q = bare.kappa_out / bare.kappa();
    const double frac = double(out) / n;
    const double sigma = std::sqrt(q * (1 - q) / n);
    const bool chan_ok = std::abs(frac - q) <= 3.0 * sigma;
    const double runtime = seconds_since(t0);
    d = "P_a traj " + fmt("%.5f", m) + " +- " + fmt("%.5f", se) + " vs master " +
        fmt("%.5f", master) + " (" + fmt("%.2f", std::abs(m - master) / se) +
        " se); out fraction " + fmt("%.4f", frac) + " vs " + fmt("%.4f", q) + " (" +
        fmt("%.2f", std::abs(frac - q) / sigma) + " sigma); runtime " + fmt("%.0f", runtime) +
        " s (< 120)";
    return pop_ok && chan_ok && runtime < 120.0;
  });

  // Criteria 5-7 and 9 share one set of runs per cutoff.
  const auto t_obs = Clock::now();
  SweepResult sweep4;
  Observables o4;
  std::string obs_error;
  double sweep_runtime = 0.0;
  try {
    const auto ts = Clock::now();
    o4.setup = calibrated_setup(options_with_cutoff(4));
    sweep4 = sweep_arrival(o4.setup, uniform_grid(-2100e-9, 2100e-9, 15), 1000, 1);
    sweep_runtime = seconds_since(ts);
    o4 = observe(4, 0);
  } catch (const std::exception& e) {
    obs_error = e.what();
  }
  const double obs_runtime = seconds_since(t_obs);

  criterion(5, "arrival-time sweep shape", [&](std::string& d) {
    if (!obs_error.empty()) throw std::runtime_error(obs_error);
    const auto& r = sweep4.r;
    const auto& t = sweep4.t1;
    const std::size_t best = std::max_element(r.begin(), r.end()) - r.begin();
    int maxima = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double left = k > 0 ? r[k - 1] : -1.0;
      const double right = k + 1 < r.size() ? r[k + 1] : -1.0;
      if (r[k] > left + 1e-6 && r[k] > right + 1e-6) ++maxima;
    }
    bool late = true, early = true;
    double late_dev = 0.0, early_max = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (t[k] >= 1.5e-6 - 1e-12) {
        late_dev = std::max(late_dev, std::abs(r[k] - 1.0));
        late = late && std::abs(r[k] - 1.0) <= 0.1;
      }
      if (t[k] <= -1.5e-6 + 1e-12) {
        early_max = std::max(early_max, r[k]);
        early = early && r[k] < 1.0;
      }
    }
    const double fwhm = o4.setup.schedule.lambda_width;
    const bool located = std::abs(t[best]) <= fwhm;
    d = "p_i " + fmt("%.4f", sweep4.p_i) + ", r_max " + fmt("%.3f", r[best]) + " at t1 = " +
        fmt("%.0f", t[best] * 1e9) + " ns, " + std::to_string(maxima) +
        " maximum, max |r-1| for t1 >= 1.5 us " + fmt("%.2e", late_dev) +
        ", max r for t1 <= -1.5 us " + fmt("%.2e", early_max) + ", r_c/r_i at peak " +
        fmt("%.3f", sweep4.r_c[best]) + "/" + fmt("%.3f", sweep4.r_i[best]) + ", sweep runtime " +
        fmt("%.0f", sweep_runtime) + " s (< 600)";
    return maxima == 1 && r[best] > 1.0 && located && late && early && sweep_runtime < 600.0;
  });

  criterion(6, "fringe behaviour", [&](std::string& d) {
    if (!obs_error.empty()) throw std::runtime_error(obs_error);
    const FringeFit& fa = o4.fringe200.adiabatic.fit;
    const double rms_ratio = fa.rms_residual / (fa.A * fa.v);
    d = "v(200 ns) " + fmt("%.3f", o4.v200) + " +- " + fmt("%.1e", fa.sigma_v) +
        ", rms/amplitude " + fmt("%.1e", rms_ratio) + ", v_off " + fmt("%.1e", o4.v200_off) +
        ", v(1 us) " + fmt("%.3f", o4.v1000) + ", v_off(1 us) " + fmt("%.1e", o4.v1000_off) +
        ", window centre " + fmt("%.0f", o4.fringe200.window_center * 1e9) +
        " ns, 16-phase fringes at two windows " + fmt("%.0f", o4.fringe_runtime) + " s (< 600)";
    return o4.fringe_runtime < 600.0 && o4.v200 > 0.2 && rms_ratio < 0.05 && o4.v200_off < 0.05 && o4.v1000_off < 0.05 &&
           o4.v200 > o4.v1000;
  });

  criterion(7, "efficiency", [&](std::string& d) {
    if (!obs_error.empty()) throw std::runtime_error(obs_error);
    const SystemParams& p = o4.setup.params;
    const double budget = efficiency_budget(p.kappa_in, p.kappa_out, p.kappa_loss, 1);
    double zeta_max = 0.0;
    for (double pa : o4.p_a) zeta_max = std::max(zeta_max, pa / o4.setup.n_bar_in);
    zeta_max = std::max(zeta_max, o4.p_i / o4.setup.n_bar_in);
    const double sym = efficiency_budget(1.0, 1.0, 0.0, 2);
    const double single = efficiency_budget(0.9, 0.0, 0.1, 1);
    d = "zeta(t1=0) " + fmt("%.4f", o4.zeta) + " in [0.02, 0.25], max simulated zeta " +
        fmt("%.4f", zeta_max) + " <= budget " + fmt("%.4f", budget) + ", symmetric lossless " +
        fmt("%.17g", sym) + ", single-sided 10% loss " + fmt("%.17g", single);
    return zeta_max <= budget && sym == 0.25 && std::abs(single - 0.9) < 1e-15 &&
           o4.zeta >= 0.02 && o4.zeta <= 0.25;
  });

  criterion(8, "overlap visibility", [&](std::string& d) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto make = [&]() {
      RandomEnvelope env;
      const int terms = 1 + static_cast<int>(3 * u(rng));
      for (int k = 0; k < terms; ++k) {
        env.center.push_back(0.2 + 0.6 * u(rng));
        env.width.push_back(0.05 + 0.2 * u(rng));
        env.coef.push_back(std::polar(0.2 + u(rng), 2 * std::numbers::pi * u(rng)));
      }
      return env;
    };
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const RandomEnvelope a = make(), b = make();
      const double lo = 0.3 * u(rng), hi = 0.7 + 0.3 * u(rng);
      worst = std::max(worst, std::abs(overlap_visibility(a, b, lo, hi) - simpson_overlap(a, b, lo, hi)));
    }
    const ProtocolSetup setup = calibrated_setup(SetupOptions{});
    const double v200 = overlap_estimate(setup, 200e-9);
    const double v1000 = overlap_estimate(setup, 1000e-9);
    d = "max |v - oracle| over 100 pairs " + fmt("%.1e", worst) + " (< 1e-10), default estimate " +
        fmt("%.3f", v200) + " (200 ns window, in [0.4, 0.8]), " + fmt("%.3f", v1000) +
        " (1 us window)";
    return worst < 1e-10 && v200 >= 0.4 && v200 <= 0.8;
  });

  criterion(9, "truncation convergence 4 -> 6", [&](std::string& d) {
    if (!obs_error.empty()) throw std::runtime_error(obs_error);
    const Observables o6 = observe(6, 0);
    double worst = 0.0;
    std::string which;
    auto cmp = [&](const std::string& name, double a, double b) {
      if (std::abs(a - b) > worst) {
        worst = std::abs(a - b);
        which = name;
      }
    };
    for (std::size_t k = 0; k < o4.r.size(); ++k) cmp("r(t1)", o4.r[k], o6.r[k]);
    cmp("p_i", o4.p_i, o6.p_i);
    cmp("v200", o4.v200, o6.v200);
    cmp("v1000", o4.v1000, o6.v1000);
    cmp("v200_off", o4.v200_off, o6.v200_off);
    cmp("v1000_off", o4.v1000_off, o6.v1000_off);
    cmp("zeta", o4.zeta, o6.zeta);
    d = "largest change " + fmt("%.1e", worst) + " (" + (which.empty() ? "none" : which) +
        ") over r(t1) x15, p_i, v x4, zeta (< 1e-3)";
    return worst < 1e-3;
  });

  criterion(10, "determinism across workers", [](std::string& d) {
    const auto base = std::filesystem::temp_directory_path() / "cqed_acceptance_det";
    std::filesystem::remove_all(base);
    bool ok = true;
    for (const char* sub : {"sweep", "fringe"}) {
      std::vector<std::string> files;
      for (const char* run : {"w1a", "w1b", "w4"}) {
        const auto dir = base / (std::string(sub) + "_" + run);
        const std::string workers = run[1] == '4' ? "4" : "1";
        std::ostringstream o, e;
        const int rc = cqedlab::run({sub, "--out", dir.string(), "--workers", workers, "--seed", "3"}, o, e);
        if (rc != 0) {
          d += std::string(sub) + " exited " + std::to_string(rc) + ": " + e.str();
          return false;
        }
        files.push_back(slurp(dir / (std::string(sub) + ".csv")));
      }
      const bool same = files[0] == files[1] && files[0] == files[2] && !files[0].empty();
      ok = ok && same;
      d += std::string(sub) + ".csv " + (same ? "identical" : "DIFFERS") + " (1, 1, 4 workers; " +
           std::to_string(files[0].size()) + " bytes); ";
    }
    std::filesystem::remove_all(base);
    return ok;
  });

  std::printf("shared sweep/fringe runs: %.0f s\n", obs_runtime);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
