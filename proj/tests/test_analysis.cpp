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


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "cqed/analysis.hpp"
#include "cqed/csv.hpp"
#include "cqed/errors.hpp"
#include "cqed/experiments.hpp"

using namespace cqed;

namespace {

TimeSeries flux_series(double t0, double t1, int n, const std::function<double(double)>& f) {
  TimeSeries s;
  for (int k = 0; k <= n; ++k) {
    const double t = t0 + (t1 - t0) * k / n;
    s.t.push_back(t);
    s.flux_out.push_back(f(t));
  }
  return s;
}

// Sum of complex Gaussians with random centres, widths and phases.
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

RandomEnvelope random_envelope(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomEnvelope env;
  const int terms = 1 + static_cast<int>(3 * u(rng));
  for (int k = 0; k < terms; ++k) {
    env.center.push_back(0.2 + 0.6 * u(rng));
    env.width.push_back(0.05 + 0.2 * u(rng));
    env.coef.push_back(std::polar(0.2 + u(rng), 2 * std::numbers::pi * u(rng)));
  }
  return env;
}

// Composite Simpson on a fine uniform grid.
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

TEST_SUITE("analysis") {

TEST_CASE("window count") {
  const auto zero = flux_series(0.0, 1e-6, 1000, [](double) { return 0.0; });
  CHECK(window_count(zero, 0.0, 1e-6) == 0.0);

  const double f = 3.7e6;
  const auto flat = flux_series(0.0, 1e-6, 1000, [f](double) { return f; });
  CHECK(std::abs(window_count(flat, 1.234e-7, 4.5e-7) - f * 4.5e-7) < 1e-12);
  CHECK_THROWS_AS(window_count(flat, -1e-7, 2e-7), InvalidArgument);
  CHECK_THROWS_AS(window_count(flat, 9e-7, 2e-7), InvalidArgument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto bumpy = flux_series(0.0, 1e-6, 777, [](double t) { return 1e6 * (1.5 + std::sin(3e7 * t)); });
  for (int trial = 0; trial < 50; ++trial) {
    double cuts[3] = {u(rng), u(rng), u(rng)};
    std::sort(cuts, cuts + 3);
    for (double& c : cuts) c *= 1e-6;
    const double whole = window_count(bumpy, cuts[0], cuts[2] - cuts[0]);
    const double parts = window_count(bumpy, cuts[0], cuts[1] - cuts[0]) +
                         window_count(bumpy, cuts[1], cuts[2] - cuts[1]);
    CHECK(std::abs(whole - parts) < 1e-12);
  }
}

TEST_CASE("window count on a decaying bare cavity") {
  SystemParams p;
  p.g = 0.0;
  p.gamma_a = p.gamma_b = 0.0;
  p.kappa_in = 0.6 * two_pi_mhz;
  p.kappa_loss = 0.4 * two_pi_mhz;
  p.fock_cutoff = 2;
  const auto space = build_space(2);
  IntegrationOptions opts;
  opts.sample_dt = 0.1e-9;
  const auto run = integrate_master(QuantumState::basis(space, Level::b, 1),
                                    [](double) { return Controls{}; }, p, 0.0, 40.0 / p.kappa(),
                                    opts);
  const double n = window_count(run.series, 0.0, 40.0 / p.kappa());
  CHECK(std::abs(n - p.kappa_out / p.kappa()) < 1e-5);
}

TEST_CASE("visibility fit on exact fringes") {
  const auto theta = phase_grid(16);
  std::vector<double> v(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) v[k] = 1.0 + 0.5 * std::cos(theta[k]);
  FringeFit fit = fit_visibility(theta, v);
  CHECK(std::abs(fit.v - 0.5) < 1e-10);
  CHECK(std::abs(fit.phi) < 1e-10);
  CHECK(std::abs(fit.A - 1.0) < 1e-10);

  for (double& x : v) x = 2.5;
  fit = fit_visibility(theta, v);
  CHECK(fit.v < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double A = 0.01 + 10 * u(rng), vis = u(rng), phi = (u(rng) - 0.5) * 6.0;
    const auto grid = phase_grid(4 + static_cast<int>(20 * u(rng)));
    std::vector<double> y(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) y[k] = A * (1 + vis * std::cos(grid[k] - phi));
    fit = fit_visibility(grid, y);
    CHECK(std::abs(fit.A - A) < 1e-10 * std::max(1.0, A));
    CHECK(std::abs(fit.v - vis) < 1e-10);
    if (vis > 1e-6) {
      CHECK(std::abs(std::remainder(fit.phi - phi, 2 * std::numbers::pi)) < 1e-10 / vis);
    }
  }
}

TEST_CASE("visibility fit on noisy fringes") {
  const auto theta = phase_grid(32);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> y(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) y[k] = 2.0 + 0.6 * std::cos(theta[k] - 1.0) + noise(rng);
  const FringeFit fit = fit_visibility(theta, y);
  CHECK(fit.sigma_v > 0.0);
  CHECK(fit.sigma_phi > 0.0);
  CHECK(std::abs(fit.v - 0.3) < 3 * fit.sigma_v);
  CHECK(std::abs(fit.phi - 1.0) < 3 * fit.sigma_phi);
}

TEST_CASE("visibility fit preconditions") {
  CHECK_THROWS_AS(fit_visibility({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(fit_visibility({0.0, 0.5, 1.0, 1.5}, {1.0, 1.0, 1.0, 1.0}), InvalidArgument);
  const auto theta = phase_grid(8);
  std::vector<double> neg(8, -1.0);
  CHECK_THROWS_AS(fit_visibility(theta, neg), DegenerateFit);
}

TEST_CASE("coherent partition bookkeeping") {
  CHECK_THROWS_AS(partition_coherent(TrajectoryEnsemble{}), InvalidArgument);

  TrajectoryEnsemble ens;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  for (int k = 0; k < 500; ++k) {
    TrajectoryRecord rec;
    rec.final.a = u(rng) < 0.3 ? 1.0 : u(rng) * 0.2;
    rec.final.b = 1.0 - rec.final.a;
    const double r = u(rng);
    if (r < 0.2) rec.jumps.push_back({1e-7, Channel::spont_a});
    else if (r < 0.3) rec.jumps.push_back({1e-7, Channel::spont_b});
    else if (r < 0.6) rec.jumps.push_back({1e-7, Channel::loss});
    total += rec.final.a;
    ens.records.push_back(rec);
  }
  ens.n_traj = 500;
  const PartitionResult part = partition_coherent(ens);
  CHECK(part.n_traj == 500);
  CHECK(std::abs(part.total() - total / 500) < 1e-12);
  CHECK(part.se_c > 0.0);
  CHECK(part.se_i > 0.0);
}

TEST_CASE("partition of an ideal adiabatic transfer has no incoherent part") {
  SystemParams p;
  p.kappa_in = p.kappa_out = p.kappa_loss = 0.0;
  p.gamma_a = p.gamma_b = 0.0;
  p.fock_cutoff = 1;
  const auto space = build_space(1);
  auto controls = [&](double t) { return Controls{p.g * 20.0 * t / 1e-6, 0.0, {}}; };
  const auto ens = run_trajectories(QuantumState::basis(space, Level::a, 0), controls, p, 0.0,
                                    1e-6, 20, 1);
  const PartitionResult part = partition_coherent(ens);
  CHECK(part.p_i_component == 0.0);
}

TEST_CASE("partition under incoherent control is nearly all incoherent") {
  const ProtocolSetup setup = calibrated_setup(SetupOptions{});
  const auto ens = absorption_trajectories(setup, 0.0, false, 1000, 17);
  const PartitionResult part = partition_coherent(ens);
  CHECK(part.total() > 0.0);
  CHECK(part.p_c < 0.05 * part.total());
}

TEST_CASE("overlap visibility examples") {
  const Envelope alpha = [](double t) { return Complex(std::exp(-t * t), 0.3 * t); };
  CHECK(std::abs(overlap_visibility(alpha, alpha, -3.0, 3.0) - 1.0) < 1e-12);
  const Envelope twice = [&](double t) { return 2.0 * alpha(t); };
  CHECK(std::abs(overlap_visibility(alpha, twice, -3.0, 3.0) - 0.8) < 1e-12);
  const Envelope left = [](double t) { return t < 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0); };
  const Envelope right = [](double t) { return t >= 0 ? Complex(0.0, 1.0) : Complex(0.0, 0.0); };
  CHECK(overlap_visibility(left, right, -1.0, 1.0) < 1e-12);
  const Envelope zero = [](double) { return Complex(0.0, 0.0); };
  CHECK_THROWS_AS(overlap_visibility(zero, zero, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("overlap visibility bounds and equality") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const RandomEnvelope a = random_envelope(rng), b = random_envelope(rng);
    const double v = overlap_visibility(a, b, 0.0, 1.0);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    // beta = c alpha with |c| = 1 gives 1.
    const Complex c = std::polar(1.0, 6.0 * u(rng));
    const Envelope ca = [&](double t) { return c * a(t); };
    CHECK(std::abs(overlap_visibility(a, ca, 0.0, 1.0) - 1.0) < 1e-12);
    // Anything else stays strictly below 1.
    const double scale = 1.1 + 0.5 * u(rng);
    const Envelope sa = [&](double t) { return scale * a(t); };
    const double expect = 2.0 * scale / (1.0 + scale * scale);
    CHECK(std::abs(overlap_visibility(a, sa, 0.0, 1.0) - expect) < 1e-12);
    CHECK(expect < 1.0 - 1e-3);
    CHECK(v < 1.0 - 1e-9);
  }
}

TEST_CASE("overlap visibility matches a fine-grid oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomEnvelope a = random_envelope(rng), b = random_envelope(rng);
    CHECK(std::abs(overlap_visibility(a, b, 0.0, 1.0) - simpson_overlap(a, b, 0.0, 1.0)) < 1e-10);
  }
}

TEST_CASE("sampled overlap agrees with the continuous one") {
  std::mt19937_64 rng(21);
  const RandomEnvelope a = random_envelope(rng), b = random_envelope(rng);
  SampledEnvelope sa, sb;
  for (int k = 0; k <= 20000; ++k) {
    const double t = k / 20000.0;
    sa.t.push_back(t);
    sb.t.push_back(t);
    sa.values.push_back(a(t));
    sb.values.push_back(b(t));
  }
  CHECK(std::abs(overlap_visibility(sa, sb, 0.1, 0.9) - overlap_visibility(a, b, 0.1, 0.9)) < 1e-6);
}

TEST_CASE("csv serialisation") {
  SweepResult sweep;
  sweep.t1 = {-1e-6, 0.0, 1e-6};
  sweep.r = {0.1, 1.4, 1.0};
  sweep.r_c = {0.05, 1.0, 0.0};
  sweep.r_i = {0.05, 0.4, 1.0};
  sweep.r_c_err = sweep.r_i_err = {0.01, 0.02, 0.03};
  const CsvMetadata meta = {{"seed", "7"}, {"config.n_traj", "10"}};
  const std::string text = to_csv(sweep, meta);
  std::istringstream in(text);
  std::string line;
  int header = 0, data = 0;
  bool columns = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++header;
    } else if (!columns) {
      CHECK(line == "t1_s,r,r_c,r_i,r_c_err,r_i_err");
      columns = true;
    } else {
      ++data;
    }
  }
  CHECK(data == 3);
  CHECK(text.find("# schema: cqedlab.sweep/1") == 0);
  CHECK(text.find("# seed: 7") != std::string::npos);

  FringeResult fr;
  fr.theta = phase_grid(4);
  fr.adiabatic.n = fr.incoherent.n = {1, 2, 3, 4};
  fr.adiabatic.R = fr.incoherent.R = {1, 2, 3, 4};
  fr.window = 2e-7;
  const std::string ftext = to_csv(fr, meta);
  CHECK(ftext.find("theta_rad,n_a,n_i,R_a,R_i\n") != std::string::npos);
  CHECK(ftext.find("\n# v: ") != std::string::npos);
  CHECK(ftext.find("\n# sigma_v: ") != std::string::npos);
  CHECK(ftext.find("\n# window_s: 1.9999999999999999e-07") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "cqed_csv_test";
  std::filesystem::create_directories(dir);
  emit_csv(sweep, meta, dir / "a.csv");
  emit_csv(sweep, meta, dir / "b.csv");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  };
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(!std::filesystem::exists(dir / "a.csv.tmp"));
  CHECK_THROWS_AS(emit_csv(sweep, meta, dir / "missing" / "x.csv"), IoError);
  std::filesystem::remove_all(dir);

  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

}  // TEST_SUITE
