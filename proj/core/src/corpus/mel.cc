// corpus/mel.cc

// Copyright 2026 The atisr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "atisr/corpus/mel.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "atisr/error.h"
#include "atisr/util/binary_io.h"
#include "atisr/util/file.h"

namespace atisr {

namespace {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// FFTW's planner is not thread-safe.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::size_t MelConfig::window_samples() const {
  return static_cast<std::size_t>(std::llround(sample_rate * window_ms / 1000.0));
}

std::size_t MelConfig::shift_samples() const {
  return static_cast<std::size_t>(std::llround(sample_rate * shift_ms / 1000.0));
}

std::size_t MelFrameCount(std::size_t samples, const MelConfig& cfg) {
  const std::size_t window = cfg.window_samples();
  if (samples < window) return 0;
  return (samples - window) / cfg.shift_samples() + 1;
}

double MelCenterHz(std::size_t index, const MelConfig& cfg) {
  const double lo = HzToMel(cfg.low_hz), hi = HzToMel(cfg.high_hz);
  const double step = (hi - lo) / static_cast<double>(cfg.n_mels + 1);
  return MelToHz(lo + step * static_cast<double>(index + 1));
}

std::vector<double> MelFilterbank(const MelConfig& cfg) {
  const std::size_t bins = cfg.n_fft / 2 + 1;
  std::vector<double> bank(cfg.n_mels * bins, 0.0);
  for (std::size_t m = 0; m < cfg.n_mels; ++m) {
    const double left = m == 0 ? cfg.low_hz : MelCenterHz(m - 1, cfg);
    const double center = MelCenterHz(m, cfg);
    const double right = m + 1 == cfg.n_mels ? cfg.high_hz : MelCenterHz(m + 1, cfg);
    for (std::size_t k = 0; k < bins; ++k) {
      const double hz = static_cast<double>(k) * cfg.sample_rate / static_cast<double>(cfg.n_fft);
      double w = 0.0;
      if (hz > left && hz <= center) w = (hz - left) / (center - left);
      else if (hz > center && hz < right) w = (right - hz) / (right - center);
      bank[m * bins + k] = w;
    }
  }
  return bank;
}

FeatureSequence MelFeatures(std::span<const float> waveform, const MelConfig& cfg) {
  const std::size_t window = cfg.window_samples();
  const std::size_t shift = cfg.shift_samples();
  if (window == 0 || shift == 0 || cfg.n_fft < window) {
    throw ConfigurationError("mel: window/shift must be positive and n_fft >= window");
  }
  const std::size_t frames = MelFrameCount(waveform.size(), cfg);
  if (frames == 0) {
    throw DataError("mel: waveform of " + std::to_string(waveform.size()) +
                    " samples is shorter than one " + std::to_string(window) + "-sample window");
  }
  const std::size_t bins = cfg.n_fft / 2 + 1;
  const auto bank = MelFilterbank(cfg);

  std::vector<double> hann(window);
  for (std::size_t i = 0; i < window; ++i) {
    hann[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(window - 1));
  }

  std::unique_ptr<double, decltype(&fftw_free)> in(
      static_cast<double*>(fftw_malloc(sizeof(double) * cfg.n_fft)), fftw_free);
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)), fftw_free);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(cfg.n_fft), in.get(), out.get(), FFTW_ESTIMATE);
  }

  FeatureSequence features;
  features.frames = frames;
  features.dim = cfg.n_mels;
  features.values.resize(frames * cfg.n_mels);
  std::vector<double> magnitude(bins);
  for (std::size_t f = 0; f < frames; ++f) {
    const float* frame = waveform.data() + f * shift;
    std::fill(in.get(), in.get() + cfg.n_fft, 0.0);
    for (std::size_t i = 0; i < window; ++i) in.get()[i] = frame[i] * hann[i];
    fftw_execute(plan);
    for (std::size_t k = 0; k < bins; ++k) {
      magnitude[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
    }
    for (std::size_t m = 0; m < cfg.n_mels; ++m) {
      double energy = 0.0;
      for (std::size_t k = 0; k < bins; ++k) energy += bank[m * bins + k] * magnitude[k];
      features.values[f * cfg.n_mels + m] =
          static_cast<float>(std::log(std::max(energy, cfg.log_floor)));
    }
  }
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan);
  }
  return features;
}

std::vector<float> ReadWavPcm16(const std::filesystem::path& path, double* sample_rate) {
  const std::string bytes = ReadFileBytes(path);
  binary::Reader r(bytes, path.string());
  if (r.ReadBytes(4) != "RIFF") throw DataError(path.string() + ": not a RIFF file");
  r.Read<std::uint32_t>();
  if (r.ReadBytes(4) != "WAVE") throw DataError(path.string() + ": not a WAVE file");
  std::uint16_t channels = 0, bits = 0, format = 0;
  std::uint32_t rate = 0;
  while (r.remaining() >= 8) {
    const std::string_view id = r.ReadBytes(4);
    const auto size = r.Read<std::uint32_t>();
    if (id == "fmt ") {
      format = r.Read<std::uint16_t>();
      channels = r.Read<std::uint16_t>();
      rate = r.Read<std::uint32_t>();
      r.Read<std::uint32_t>();
      r.Read<std::uint16_t>();
      bits = r.Read<std::uint16_t>();
      if (size > 16) r.ReadBytes(size - 16);
    } else if (id == "data") {
      if (format != 1 || bits != 16 || channels != 1) {
        throw DataError(path.string() + ": only mono 16-bit PCM is supported");
      }
      if (sample_rate) *sample_rate = rate;
      std::vector<float> samples(size / 2);
      for (float& s : samples) s = static_cast<float>(r.Read<std::int16_t>()) / 32768.0f;
      return samples;
    } else {
      r.ReadBytes(size + (size & 1));
    }
  }
  throw DataError(path.string() + ": no data chunk");
}

}  // namespace atisr
