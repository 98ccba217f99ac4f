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


#include "cqed/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cqed/errors.hpp"
#include "cqed/version.hpp"

namespace cqed {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void header(std::ostringstream& os, const char* schema, const CsvMetadata& meta) {
  os << "# schema: cqedlab." << schema << "/" << csv_schema_version << "\n";
  os << "# tool_version: " << tool_version << "\n";
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << "\n";
}

void row(std::ostringstream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

struct Writer {
  const CsvMetadata& meta;

  std::string operator()(const EmissionRecord& rec) const {
    std::ostringstream os;
    header(os, "emission", meta);
    os << "# emission_probability: " << format_number(rec.emission_probability) << "\n";
    os << "t_s,flux_out_per_s,P_a,P_b,P_e,n_cav\n";
    const TimeSeries& s = rec.series;
    for (std::size_t k = 0; k < s.size(); ++k) {
      row(os, {s.t[k], s.flux_out[k], s.P_a[k], s.P_b[k], s.P_e[k], s.n_cav[k]});
    }
    return os.str();
  }

  std::string operator()(const AbsorptionSet& set) const {
    std::ostringstream os;
    header(os, "absorb", meta);
    os << "omega1_on,t1_s,p,detection_prob,t_readout_s\n";
    for (const AbsorptionRecord& rec : set.records) {
      row(os, {rec.omega1_on ? 1.0 : 0.0, rec.t1, rec.p, rec.detection_prob, rec.t_readout});
    }
    return os.str();
  }

  std::string operator()(const SweepResult& res) const {
    std::ostringstream os;
    header(os, "sweep", meta);
    os << "# p_i: " << format_number(res.p_i) << "\n";
    os << "# n_traj: " << res.n_traj << "\n";
    os << "t1_s,r,r_c,r_i,r_c_err,r_i_err\n";
    for (std::size_t k = 0; k < res.t1.size(); ++k) {
      row(os, {res.t1[k], res.r[k], res.r_c[k], res.r_i[k], res.r_c_err[k], res.r_i_err[k]});
    }
    return os.str();
  }

  std::string operator()(const FringeResult& res) const {
    std::ostringstream os;
    header(os, "fringe", meta);
    os << "theta_rad,n_a,n_i,R_a,R_i\n";
    for (std::size_t k = 0; k < res.theta.size(); ++k) {
      row(os, {res.theta[k], res.adiabatic.n[k], res.incoherent.n[k], res.adiabatic.R[k],
               res.incoherent.R[k]});
    }
    const FringeFit& a = res.adiabatic.fit;
    const FringeFit& i = res.incoherent.fit;
    os << "# v: " << format_number(a.v) << "\n";
    os << "# phi: " << format_number(a.phi) << "\n";
    os << "# sigma_v: " << format_number(a.sigma_v) << "\n";
    os << "# sigma_phi: " << format_number(a.sigma_phi) << "\n";
    os << "# A: " << format_number(a.A) << "\n";
    os << "# rms_residual: " << format_number(a.rms_residual) << "\n";
    os << "# v_i: " << format_number(i.v) << "\n";
    os << "# sigma_v_i: " << format_number(i.sigma_v) << "\n";
    os << "# window_s: " << format_number(res.window) << "\n";
    os << "# window_center_s: " << format_number(res.window_center) << "\n";
    return os.str();
  }
};

struct Namer {
  std::string operator()(const EmissionRecord&) const { return "emission.csv"; }
  std::string operator()(const AbsorptionSet&) const { return "absorb.csv"; }
  std::string operator()(const SweepResult&) const { return "sweep.csv"; }
  std::string operator()(const FringeResult&) const { return "fringe.csv"; }
};

}  // namespace

std::string to_csv(const ExperimentResult& result, const CsvMetadata& meta) {
  return std::visit(Writer{meta}, result);
}

std::string csv_file_name(const ExperimentResult& result) { return std::visit(Namer{}, result); }

std::string timeseries_to_csv(const TimeSeries& s, const CsvMetadata& meta) {
  std::ostringstream os;
  header(os, "timeseries", meta);
  os << "t_s,P_a,P_b,P_e,n_cav,flux_out_per_s,trace_residual,field_re,field_im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    row(os, {s.t[k], s.P_a[k], s.P_b[k], s.P_e[k], s.n_cav[k], s.flux_out[k],
             s.trace_residual[k], s.field[k].real(), s.field[k].imag()});
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError(path.string(), "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(path.string(), "rename failed");
  }
}

void emit_csv(const ExperimentResult& result, const CsvMetadata& meta,
              const std::filesystem::path& path) {
  write_atomic(path, to_csv(result, meta));
}

void emit_timeseries_csv(const TimeSeries& series, const CsvMetadata& meta,
                         const std::filesystem::path& path) {
  write_atomic(path, timeseries_to_csv(series, meta));
}

}  // namespace cqed
