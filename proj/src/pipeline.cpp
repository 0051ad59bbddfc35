// Copyright 2026 The spinalg Authors
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

#include "spinalg/pipeline.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinalg/errors.hpp"
#include "spinalg/qoracle.hpp"
#include "spinalg/version.hpp"

namespace spinalg {

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, digest);
  return buf;
}

std::ofstream open_output(const std::string& dir, const std::string& name,
                          const RunConfig& cfg, bool comment_hash) {
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open output file: " + path.string());
  if (comment_hash)
    out << "# spinalg " << kVersion << " config=" << digest_hex(cfg.digest)
        << "\n";
  return out;
}

StateVector initial_state(const RunConfig& cfg, const Basis& basis) {
  if (cfg.initial_state) {
    if (cfg.initial_state->size() != Eigen::Index(basis.size()))
      fail(ErrorCode::Config, "initial_state length does not match basis");
    return *cfg.initial_state;
  }
  return thermal_state(basis, cfg.system, cfg.thermal_mode);
}

}  // namespace

SimulationArtifacts run_simulation(const RunConfig& cfg) {
  const StructureTable table = StructureTable::lazy(cfg.system.nuclei);
  const Basis& basis = table.basis();
  const StateVector v0 = initial_state(cfg, basis);
  SimulationArtifacts artifacts;
  artifacts.trajectory =
      run_sequence(table, cfg.system, cfg.sequence, v0, cfg.integrator);
  if (artifacts.trajectory.acquisition) {
    const Trajectory window = artifacts.trajectory.acquisition_slice();
    artifacts.fid = acquire_fid(basis, window, cfg.system);
    artifacts.spec =
        spectrum(*artifacts.fid, cfg.processing.line_broadening_hz,
                 cfg.processing.zero_fill, cfg.processing.peak_threshold);
  }
  return artifacts;
}

void write_outputs(const RunConfig& cfg, const SimulationArtifacts& artifacts,
                   const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory: " + out_dir);

  const Basis basis(cfg.system.nuclei);
  if (cfg.write_trajectory) {
    std::ofstream out = open_output(out_dir, "trajectory.csv", cfg, true);
    out << "t";
    for (std::size_t j = 0; j < basis.size(); ++j) out << ',' << basis.name(j);
    out << '\n';
    const Trajectory& traj = artifacts.trajectory;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      out << g17(traj.times[k]);
      const StateVector& v = traj.states[k];
      for (Eigen::Index j = 0; j < v.size(); ++j) out << ',' << g17(v[j]);
      out << '\n';
    }
    if (!out) fail(ErrorCode::Io, "failed writing trajectory.csv");
  }

  if (artifacts.fid) {
    std::ofstream out = open_output(out_dir, "fid.csv", cfg, true);
    out << "t,re,im\n";
    for (std::size_t k = 0; k < artifacts.fid->samples.size(); ++k) {
      const auto& s = artifacts.fid->samples[k];
      out << g17(double(k) * artifacts.fid->dwell_s) << ',' << g17(s.real())
          << ',' << g17(s.imag()) << '\n';
    }
    if (!out) fail(ErrorCode::Io, "failed writing fid.csv");
  }

  if (artifacts.spec) {
    {
      std::ofstream out = open_output(out_dir, "spectrum.csv", cfg, true);
      out << "freq_hz,re,im,mag\n";
      const Spectrum& s = *artifacts.spec;
      for (std::size_t i = 0; i < s.freq_hz.size(); ++i) {
        out << g17(s.freq_hz[i]) << ',' << g17(s.amplitude[i].real()) << ','
            << g17(s.amplitude[i].imag()) << ','
            << g17(std::abs(s.amplitude[i])) << '\n';
      }
      if (!out) fail(ErrorCode::Io, "failed writing spectrum.csv");
    }
    {
      nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
      for (const SpectrumPeak& p : artifacts.spec->peaks) {
        nlohmann::ordered_json entry;
        entry["freq_hz"] = p.freq_hz;
        entry["magnitude"] = p.magnitude;
        peaks.push_back(entry);
      }
      std::ofstream out = open_output(out_dir, "peaks.json", cfg, false);
      out << peaks.dump(2) << '\n';
      if (!out) fail(ErrorCode::Io, "failed writing peaks.json");
    }
  }
}

VerifyReport run_verification(const RunConfig& cfg, double horizon_s,
                              int samples, double tolerance) {
  if (cfg.system.nuclei > qoracle::kMaxOracleNuclei)
    fail(ErrorCode::Ceiling,
         "oracle ceiling exceeded: " + std::to_string(cfg.system.nuclei) +
             " nuclei > " + std::to_string(qoracle::kMaxOracleNuclei));
  if (!(horizon_s > 0.0) || samples < 1)
    fail(ErrorCode::InvalidArgument,
         "verification needs horizon > 0 and samples >= 1");

  const StructureTable table = StructureTable::lazy(cfg.system.nuclei);
  const Basis& basis = table.basis();

  StateVector v = initial_state(cfg, basis);
  qoracle::DensityMatrix rho =
      cfg.initial_state ? qoracle::state_to_rho(basis, *cfg.initial_state)
                        : qoracle::thermal_rho(basis, cfg.system);

  VerifyReport report;
  report.nuclei = cfg.system.nuclei;
  report.samples = std::size_t(samples);
  report.horizon_s = horizon_s;
  report.tolerance = tolerance;

  double t = 0.0;
  auto compare = [&](const StateVector& classical, const StateVector& oracle) {
    for (Eigen::Index j = 0; j < classical.size(); ++j) {
      const double dev = std::abs(classical[j] - oracle[j]);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_index = std::size_t(j);
        report.worst_time_s = t;
      }
    }
  };
  compare(v, qoracle::expectations(basis, rho.rho));

  // Pulses and prep segments of the configured sequence run on both sides;
  // acquisition is replaced by the uniform comparison grid below.
  for (const SequenceEvent& ev : cfg.sequence.events) {
    if (const auto* evolve = std::get_if<EvolveEvent>(&ev)) {
      const SparseGenerator A = adjoint_generator(
          table, hamiltonian_coeffs(basis, cfg.system, evolve->field));
      v = evolve_constant(v, A, evolve->duration_s, cfg.integrator);
      rho = qoracle::evolve_rho(rho, cfg.system, evolve->field,
                                evolve->duration_s);
      t += evolve->duration_s;
      compare(v, qoracle::expectations(basis, rho.rho));
    } else if (const auto* pulse = std::get_if<HardPulseEvent>(&ev)) {
      v = apply_rotation(basis, v, pulse->targets, pulse->axis,
                         pulse->angle_rad);
      const qoracle::ComplexMatrix u = qoracle::rotation_unitary(
          basis.nuclei(), pulse->targets, pulse->axis, pulse->angle_rad);
      rho.rho = u * rho.rho * u.adjoint();
      compare(v, qoracle::expectations(basis, rho.rho));
    }
  }

  const SparseGenerator A = adjoint_generator(
      table, hamiltonian_coeffs(basis, cfg.system, FieldSpec::longitudinal()));
  const double dt = horizon_s / double(samples);
  for (int k = 0; k < samples; ++k) {
    v = evolve_constant(v, A, dt, cfg.integrator);
    rho = qoracle::evolve_rho(rho, cfg.system, FieldSpec::longitudinal(), dt);
    t += dt;
    compare(v, qoracle::expectations(basis, rho.rho));
  }

  report.worst_observable = basis.name(report.worst_index);
  report.passed = report.max_deviation <= tolerance;
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  out << "nuclei=" << report.nuclei << " samples=" << report.samples
      << " horizon_s=" << g17(report.horizon_s) << '\n'
      << "max_deviation=" << g17(report.max_deviation)
      << " tolerance=" << g17(report.tolerance) << '\n'
      << "worst_observable=" << report.worst_observable
      << " worst_time_s=" << g17(report.worst_time_s) << '\n'
      << (report.passed ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace spinalg
