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

#pragma once

#include <complex>
#include <vector>

#include "spinalg/algebra.hpp"
#include "spinalg/dynamics.hpp"
#include "spinalg/spin_system.hpp"

namespace spinalg {

/// Quadrature-detected time-domain signal. The detection convention is
/// s = <S_x> + i <S_y>, so a positive offset precesses as exp(-i omega t);
/// the spectrum stage uses the matching transform kernel so that positive
/// offsets land at positive frequencies.
struct Fid {
  double dwell_s = 0.0;
  std::vector<std::complex<double>> samples;
  double scale = 1.0;  // carries the molecule count and receiver gain
};

struct SpectrumPeak {
  double freq_hz = 0.0;
  double magnitude = 0.0;
};

struct Spectrum {
  std::vector<double> freq_hz;  // signed grid, spacing 1/(dwell * points)
  std::vector<std::complex<double>> amplitude;
  std::vector<SpectrumPeak> peaks;

  double bin_hz() const {
    return freq_hz.size() > 1 ? freq_hz[1] - freq_hz[0] : 0.0;
  }
};

/// s_k = scale * sum_p w_p (<S_x^p> + i <S_y^p>)(t_k) over the snapshots of
/// `acquisition`, which must sit on a uniform dwell grid. Default weights
/// are the gyromagnetic ratios; scale carries the molecule count.
Fid acquire_fid(const Basis& basis, const Trajectory& acquisition,
                const SpinSystem& sys,
                const std::vector<double>* weights = nullptr);

/// Exponential apodization exp(-pi lb t), zero-fill to a power of two and
/// discrete Fourier transform with fftshift frequency ordering. zero_fill = 0
/// picks the smallest power of two >= 2 * samples. Peaks are local maxima of
/// the magnitude above `peak_threshold` times the global maximum.
Spectrum spectrum(const Fid& fid, double line_broadening_hz = 0.0,
                  std::size_t zero_fill = 0, double peak_threshold = 0.01);

struct PeakPair {
  SpectrumPeak a;
  SpectrumPeak b;
  double freq_delta_hz = 0.0;
  double rel_magnitude_delta = 0.0;
};

struct SpectrumComparison {
  std::vector<PeakPair> matched;
  std::vector<SpectrumPeak> unmatched_a;
  std::vector<SpectrumPeak> unmatched_b;
  double max_freq_delta_hz = 0.0;
  double max_rel_magnitude_delta = 0.0;
};

/// Greedy nearest-frequency peak pairing on spectra sharing one grid.
SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b);

}  // namespace spinalg
