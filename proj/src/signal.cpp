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

#include "spinalg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinalg/errors.hpp"

namespace spinalg {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place radix-2 transform with kernel exp(+2 pi i j k / N): a signal
// exp(-i omega t) peaks at +omega/2pi, matching the detection convention.
void fft_plus(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / double(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

Fid acquire_fid(const Basis& basis, const Trajectory& acquisition,
                const SpinSystem& sys, const std::vector<double>* weights) {
  if (basis.nuclei() != sys.nuclei)
    fail(ErrorCode::InvalidArgument, "basis and system nucleus counts differ");
  if (acquisition.times.size() < 2)
    fail(ErrorCode::InvalidArgument, "acquisition needs at least 2 snapshots");
  if (weights && int(weights->size()) != sys.nuclei)
    fail(ErrorCode::InvalidArgument, "weight vector length mismatch");
  const double dwell = acquisition.times[1] - acquisition.times[0];
  if (!(dwell > 0.0))
    fail(ErrorCode::InvalidArgument, "acquisition grid must advance in time");
  for (std::size_t k = 1; k < acquisition.times.size(); ++k) {
    const double step = acquisition.times[k] - acquisition.times[k - 1];
    if (std::abs(step - dwell) > 1e-9 * dwell)
      fail(ErrorCode::InvalidArgument,
           "acquisition snapshots are not on a uniform dwell grid");
  }

  std::vector<Eigen::Index> ix(sys.nuclei), iy(sys.nuclei);
  for (int p = 1; p <= sys.nuclei; ++p) {
    ix[p - 1] = Eigen::Index(
        basis.index_of_code(std::uint32_t(1) << (2 * (p - 1))));
    iy[p - 1] = Eigen::Index(
        basis.index_of_code(std::uint32_t(2) << (2 * (p - 1))));
  }
  Fid fid;
  fid.dwell_s = dwell;
  fid.scale = sys.molecules;
  fid.samples.reserve(acquisition.states.size());
  for (const StateVector& v : acquisition.states) {
    if (v.size() != Eigen::Index(basis.size()))
      fail(ErrorCode::InvalidArgument, "snapshot length does not match basis");
    std::complex<double> s = 0.0;
    for (int p = 0; p < sys.nuclei; ++p) {
      const double w = weights ? (*weights)[p] : sys.gamma[p];
      s += w * std::complex<double>(v[ix[p]], v[iy[p]]);
    }
    fid.samples.push_back(fid.scale * s);
  }
  return fid;
}

Spectrum spectrum(const Fid& fid, double line_broadening_hz,
                  std::size_t zero_fill, double peak_threshold) {
  if (fid.samples.size() < 2 || !(fid.dwell_s > 0.0))
    fail(ErrorCode::InvalidArgument, "FID needs >= 2 samples and dwell > 0");
  if (!(line_broadening_hz >= 0.0))
    fail(ErrorCode::InvalidArgument, "line broadening must be >= 0");
  std::size_t nfft =
      zero_fill == 0 ? next_pow2(2 * fid.samples.size()) : zero_fill;
  if (!is_pow2(nfft) || nfft < fid.samples.size())
    fail(ErrorCode::InvalidArgument,
         "zero_fill must be a power of two >= the sample count");

  std::vector<std::complex<double>> x(nfft, 0.0);
  for (std::size_t k = 0; k < fid.samples.size(); ++k) {
    const double t = double(k) * fid.dwell_s;
    x[k] = fid.samples[k] *
           std::exp(-std::numbers::pi * line_broadening_hz * t);
  }
  fft_plus(x);

  Spectrum spec;
  spec.freq_hz.resize(nfft);
  spec.amplitude.resize(nfft);
  const double df = 1.0 / (fid.dwell_s * double(nfft));
  const std::ptrdiff_t half = std::ptrdiff_t(nfft) / 2;
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(nfft); ++i) {
    const std::ptrdiff_t signed_bin = i - half;
    spec.freq_hz[std::size_t(i)] = double(signed_bin) * df;
    spec.amplitude[std::size_t(i)] =
        x[std::size_t((signed_bin + std::ptrdiff_t(nfft)) % std::ptrdiff_t(nfft))];
  }

  double max_mag = 0.0;
  for (const auto& a : spec.amplitude) max_mag = std::max(max_mag, std::abs(a));
  if (max_mag > 0.0) {
    const double floor = peak_threshold * max_mag;
    for (std::size_t i = 1; i + 1 < nfft; ++i) {
      const double m = std::abs(spec.amplitude[i]);
      if (m < floor) continue;
      if (m > std::abs(spec.amplitude[i - 1]) &&
          m >= std::abs(spec.amplitude[i + 1]))
        spec.peaks.push_back({spec.freq_hz[i], m});
    }
  }
  return spec;
}

SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b) {
  if (a.freq_hz.size() != b.freq_hz.size())
    fail(ErrorCode::InvalidArgument, "spectra are on different grids");
  for (std::size_t i = 0; i < a.freq_hz.size(); ++i)
    if (a.freq_hz[i] != b.freq_hz[i])
      fail(ErrorCode::InvalidArgument, "spectra are on different grids");

  SpectrumComparison cmp;
  std::vector<bool> used(b.peaks.size(), false);
  std::vector<std::size_t> order(a.peaks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a.peaks[l].magnitude > a.peaks[r].magnitude;
  });
  for (std::size_t i : order) {
    const SpectrumPeak& pa = a.peaks[i];
    std::size_t best = b.peaks.size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < b.peaks.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(b.peaks[j].freq_hz - pa.freq_hz);
      if (best == b.peaks.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == b.peaks.size()) {
      cmp.unmatched_a.push_back(pa);
      continue;
    }
    used[best] = true;
    const SpectrumPeak& pb = b.peaks[best];
    const double denom = std::max(pa.magnitude, pb.magnitude);
    PeakPair pair{pa, pb, pb.freq_hz - pa.freq_hz,
                  denom > 0.0 ? std::abs(pb.magnitude - pa.magnitude) / denom
                              : 0.0};
    cmp.max_freq_delta_hz =
        std::max(cmp.max_freq_delta_hz, std::abs(pair.freq_delta_hz));
    cmp.max_rel_magnitude_delta =
        std::max(cmp.max_rel_magnitude_delta, pair.rel_magnitude_delta);
    cmp.matched.push_back(pair);
  }
  for (std::size_t j = 0; j < b.peaks.size(); ++j)
    if (!used[j]) cmp.unmatched_b.push_back(b.peaks[j]);
  return cmp;
}

}  // namespace spinalg
