// corpus/synthetic.cc

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

#include "atisr/corpus/synthetic.h"

#include <cmath>
#include <cstdio>

#include "atisr/error.h"
#include "atisr/numerics/random.h"

namespace atisr {

void to_json(nlohmann::ordered_json& j, const SyntheticSpec& s) {
  j = nlohmann::ordered_json{{"alphabet_size", s.alphabet_size},
                             {"min_chars", s.min_chars},
                             {"max_chars", s.max_chars},
                             {"min_frames_per_char", s.min_frames_per_char},
                             {"max_frames_per_char", s.max_frames_per_char},
                             {"feature_dim", s.feature_dim},
                             {"noise", s.noise},
                             {"allow_repeats", s.allow_repeats},
                             {"train_size", s.train_size},
                             {"dev_size", s.dev_size},
                             {"test_size", s.test_size},
                             {"seed", s.seed}};
}

void from_json(const nlohmann::ordered_json& j, SyntheticSpec& s) {
  SyntheticSpec d;
  s.alphabet_size = j.value("alphabet_size", d.alphabet_size);
  s.min_chars = j.value("min_chars", d.min_chars);
  s.max_chars = j.value("max_chars", d.max_chars);
  s.min_frames_per_char = j.value("min_frames_per_char", d.min_frames_per_char);
  s.max_frames_per_char = j.value("max_frames_per_char", d.max_frames_per_char);
  s.feature_dim = j.value("feature_dim", d.feature_dim);
  s.noise = j.value("noise", d.noise);
  s.allow_repeats = j.value("allow_repeats", d.allow_repeats);
  s.train_size = j.value("train_size", d.train_size);
  s.dev_size = j.value("dev_size", d.dev_size);
  s.test_size = j.value("test_size", d.test_size);
  s.seed = j.value("seed", d.seed);
}

std::vector<std::string> SyntheticAlphabet(std::size_t n) {
  if (n == 0 || n > 26) throw GenerationError("alphabet size must be in [1, 26]");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

namespace {

void Validate(const SyntheticSpec& s) {
  if (s.min_chars == 0 || s.min_chars > s.max_chars) {
    throw GenerationError("characters per utterance must satisfy 1 <= min <= max");
  }
  if (s.min_frames_per_char == 0 || s.min_frames_per_char > s.max_frames_per_char) {
    throw GenerationError("frames per character must satisfy 1 <= min <= max");
  }
  if (s.feature_dim == 0) throw GenerationError("feature dim must be positive");
  if (s.noise < 0.0) throw GenerationError("noise level must be non-negative");
  if (!s.allow_repeats && s.alphabet_size < 2 && s.max_chars > 1) {
    throw GenerationError("an alphabet of one symbol cannot avoid adjacent repeats");
  }
}

std::vector<double> DrawTemplates(const SyntheticSpec& s, Rng& rng) {
  constexpr int kAttempts = 100;
  const double min_gap = 4.0 * s.noise;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<double> t(s.alphabet_size * s.feature_dim);
    for (double& v : t) v = rng.Uniform(-1.0, 1.0);
    bool ok = true;
    for (std::size_t a = 0; a < s.alphabet_size && ok; ++a) {
      for (std::size_t b = a + 1; b < s.alphabet_size && ok; ++b) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < s.feature_dim; ++k) {
          const double diff = t[a * s.feature_dim + k] - t[b * s.feature_dim + k];
          d2 += diff * diff;
        }
        ok = std::sqrt(d2) > min_gap;
      }
    }
    if (ok) return t;
  }
  throw GenerationError("cannot place " + std::to_string(s.alphabet_size) +
                        " templates in dimension " + std::to_string(s.feature_dim) +
                        " more than 4 sigma apart (sigma = " + std::to_string(s.noise) + ")");
}

}  // namespace

SyntheticCorpus GenerateSynthetic(const SyntheticSpec& spec) {
  Validate(spec);
  SyntheticCorpus corpus;
  const auto alphabet = SyntheticAlphabet(spec.alphabet_size);
  corpus.vocabulary = Vocabulary::FromCharacters(alphabet);

  Rng template_rng = Rng::Derive(spec.seed, "synthetic/templates");
  corpus.templates = DrawTemplates(spec, template_rng);

  const std::size_t total = spec.train_size + spec.dev_size + spec.test_size;
  Rng rng = Rng::Derive(spec.seed, "synthetic/utterances");
  std::vector<Utterance> all;
  all.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    Utterance u;
    const auto length = static_cast<std::size_t>(rng.UniformInt(
        static_cast<std::int64_t>(spec.min_chars), static_cast<std::int64_t>(spec.max_chars)));
    std::vector<std::size_t> symbols;
    for (std::size_t c = 0; c < length; ++c) {
      std::size_t sym;
      do {
        sym = static_cast<std::size_t>(
            rng.UniformInt(0, static_cast<std::int64_t>(spec.alphabet_size) - 1));
      } while (!spec.allow_repeats && !symbols.empty() && sym == symbols.back());
      symbols.push_back(sym);
      u.transcript += alphabet[sym];
    }
    u.features.dim = spec.feature_dim;
    for (std::size_t sym : symbols) {
      const auto run = static_cast<std::size_t>(
          rng.UniformInt(static_cast<std::int64_t>(spec.min_frames_per_char),
                         static_cast<std::int64_t>(spec.max_frames_per_char)));
      for (std::size_t f = 0; f < run; ++f) {
        for (std::size_t k = 0; k < spec.feature_dim; ++k) {
          const double noise = spec.noise > 0.0 ? spec.noise * rng.Normal() : 0.0;
          u.features.values.push_back(
              static_cast<float>(corpus.templates[sym * spec.feature_dim + k] + noise));
        }
      }
      u.features.frames += run;
    }
    all.push_back(std::move(u));
  }

  // Seed-derived partition into disjoint splits.
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  Rng split_rng = Rng::Derive(spec.seed, "synthetic/split");
  split_rng.Shuffle(order);
  auto take = [&](std::size_t begin, std::size_t count, const char* prefix, Dataset& out) {
    for (std::size_t i = 0; i < count; ++i) {
      Utterance u = all[order[begin + i]];
      char id[64];
      std::snprintf(id, sizeof(id), "%s-%04zu", prefix, i);
      u.id = id;
      out.utterances.push_back(std::move(u));
    }
  };
  take(0, spec.train_size, "train", corpus.train);
  take(spec.train_size, spec.dev_size, "dev", corpus.dev);
  take(spec.train_size + spec.dev_size, spec.test_size, "test", corpus.test);
  return corpus;
}

}  // namespace atisr
