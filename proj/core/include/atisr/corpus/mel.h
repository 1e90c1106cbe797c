// atisr/corpus/mel.h

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

#ifndef ATISR_CORPUS_MEL_H_
#define ATISR_CORPUS_MEL_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "atisr/corpus/dataset.h"

namespace atisr {

struct MelConfig {
  double sample_rate = 16000.0;
  std::size_t n_mels = 80;
  double window_ms = 50.0;
  double shift_ms = 12.5;
  std::size_t n_fft = 1024;  // >= window length; the frame is zero-padded
  double low_hz = 0.0;
  double high_hz = 8000.0;
  double log_floor = 1e-10;

  std::size_t window_samples() const;
  std::size_t shift_samples() const;
};

/// floor((samples - window) / shift) + 1, or 0 if shorter than one window.
std::size_t MelFrameCount(std::size_t samples, const MelConfig& cfg);

/// HTK-scale triangular filters, n_mels x (n_fft / 2 + 1), row-major.
std::vector<double> MelFilterbank(const MelConfig& cfg);
/// Center frequency of filter `index`, in Hz.
double MelCenterHz(std::size_t index, const MelConfig& cfg);

/// Hann-windowed magnitude spectrum, mel filtering, then log(max(., floor)).
/// Throws DataError when the waveform is shorter than one window.
FeatureSequence MelFeatures(std::span<const float> waveform, const MelConfig& cfg = {});

/// Mono 16-bit PCM WAV reader, samples scaled to [-1, 1).
std::vector<float> ReadWavPcm16(const std::filesystem::path& path, double* sample_rate = nullptr);

}  // namespace atisr

#endif  // ATISR_CORPUS_MEL_H_
