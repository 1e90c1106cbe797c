// tests/unit/corpus_test.cc

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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "atisr/corpus/dataset.h"
#include "atisr/corpus/mel.h"
#include "atisr/corpus/synthetic.h"
#include "atisr/corpus/vocabulary.h"
#include "atisr/error.h"
#include "support/oracles.h"

namespace atisr {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("atisr-corpus-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("vocabulary layout and round trips") {
  Vocabulary v = Vocabulary::FromCharacters({"a", "b", "é"});
  REQUIRE(v.size() == 10);
  CHECK(v.Token(0) == "<pad>");
  CHECK(v.Token(kBosId) == "<s>");
  CHECK(v.Token(kEosId) == "</s>");
  CHECK(v.Token(kBlockBeginId) == "<m>");
  CHECK(v.Token(kBlockEndId) == "</m>");
  CHECK(v.Token(kBlankId) == "<blank>");
  CHECK(v.Token(kUnkId) == "<unk>");
  CHECK(*v.Find("é") == 9);

  TokenSequence ids;
  for (TokenId i = kNumReserved; i < static_cast<TokenId>(v.size()); ++i) ids.push_back(i);
  CHECK(v.Encode(v.Decode(ids)) == ids);

  std::size_t unknown = 0;
  CHECK(v.Encode("axb", &unknown) == TokenSequence{7, kUnkId, 8});
  CHECK(unknown == 1);

  auto dir = TempDir("vocab");
  v.Save(dir / "vocab.txt");
  CHECK(Vocabulary::Load(dir / "vocab.txt") == v);

  const std::string texts[] = {"cab", "bad"};
  CHECK(Vocabulary::FromTranscripts(texts).tokens().back() == "d");
  fs::remove_all(dir);
}

SyntheticSpec SmallSpec() {
  SyntheticSpec s;
  s.train_size = 20;
  s.dev_size = 5;
  s.test_size = 5;
  return s;
}

TEST_CASE("synthetic generation is deterministic and split disjoint") {
  auto a = GenerateSynthetic(SmallSpec());
  auto b = GenerateSynthetic(SmallSpec());
  CHECK(a.train == b.train);
  CHECK(a.dev == b.dev);
  CHECK(a.test == b.test);
  CHECK(a.templates == b.templates);
  SyntheticSpec other = SmallSpec();
  other.seed = 2;
  CHECK(!(GenerateSynthetic(other).train == a.train));

  std::set<std::string> ids;
  std::set<std::vector<float>> features;
  for (const Dataset* d : {&a.train, &a.dev, &a.test}) {
    for (const auto& u : d->utterances) {
      CHECK(ids.insert(u.id).second);
      CHECK(features.insert(u.features.values).second);
      CHECK(u.transcript.size() >= 30);
      CHECK(u.transcript.size() <= 60);
      for (std::size_t i = 1; i < u.transcript.size(); ++i) CHECK(u.transcript[i] != u.transcript[i - 1]);
    }
  }
  CHECK(a.train.size() == 20);
  CHECK(a.dev.size() == 5);
  CHECK(a.test.size() == 5);
}

// Labels every frame with its nearest template.
std::vector<std::size_t> NearestTemplate(const SyntheticCorpus& c, const FeatureSequence& f,
                                         std::size_t alphabet) {
  std::vector<std::size_t> out(f.frames);
  for (std::size_t t = 0; t < f.frames; ++t) {
    double best = INFINITY;
    for (std::size_t k = 0; k < alphabet; ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < f.dim; ++j) {
        const double e = f.at(t, j) - c.templates[k * f.dim + j];
        d += e * e;
      }
      if (d < best) {
        best = d;
        out[t] = k;
      }
    }
  }
  return out;
}

TEST_CASE("noise-free frames are exactly the templates, in transcript order") {
  SyntheticSpec spec = SmallSpec();
  spec.noise = 0.0;
  auto c = GenerateSynthetic(spec);
  const auto alphabet = SyntheticAlphabet(spec.alphabet_size);
  for (const auto& u : c.train.utterances) {
    auto labels = NearestTemplate(c, u.features, spec.alphabet_size);
    std::string runs;
    std::size_t run = 0;
    for (std::size_t t = 0; t < u.features.frames; ++t) {
      for (std::size_t j = 0; j < u.features.dim; ++j) {
        CHECK(u.features.at(t, j) == static_cast<float>(c.templates[labels[t] * spec.feature_dim + j]));
      }
      ++run;
      if (t + 1 == u.features.frames || labels[t + 1] != labels[t]) {
        CHECK(run >= spec.min_frames_per_char);
        CHECK(run <= spec.max_frames_per_char);
        runs += alphabet[labels[t]];
        run = 0;
      }
    }
    CHECK(runs == u.transcript);
  }
}

TEST_CASE("nearest-template classification recovers the characters") {
  SyntheticSpec spec = SmallSpec();
  spec.noise = 0.2;
  auto c = GenerateSynthetic(spec);
  const auto alphabet = SyntheticAlphabet(spec.alphabet_size);
  std::size_t edits = 0, chars = 0;
  for (const auto& u : c.train.utterances) {
    auto labels = NearestTemplate(c, u.features, spec.alphabet_size);
    std::string recovered;
    std::size_t begin = 0;
    for (std::size_t t = 1; t <= labels.size(); ++t) {
      if (t == labels.size() || labels[t] != labels[begin]) {
        if (t - begin >= 3 && (recovered.empty() || recovered.back() != alphabet[labels[begin]][0])) {
          recovered += alphabet[labels[begin]];
        }
        begin = t;
      }
    }
    edits += testing::LevenshteinOracle(u.transcript, recovered);
    chars += u.transcript.size();
  }
  CHECK(1.0 - static_cast<double>(edits) / static_cast<double>(chars) >= 0.99);
}

TEST_CASE("infeasible synthetic specs are rejected") {
  SyntheticSpec s = SmallSpec();
  s.min_chars = 10;
  s.max_chars = 5;
  CHECK_THROWS_AS(GenerateSynthetic(s), GenerationError);
  s = SmallSpec();
  s.noise = 50.0;
  s.feature_dim = 2;
  CHECK_THROWS_AS(GenerateSynthetic(s), GenerationError);
  s = SmallSpec();
  s.alphabet_size = 1;
  CHECK_THROWS_AS(GenerateSynthetic(s), GenerationError);
}

TEST_CASE("templates are more than four noise levels apart") {
  auto c = GenerateSynthetic(SmallSpec());
  const std::size_t n = 10, d = 16;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double dist = 0.0;
      for (std::size_t j = 0; j < d; ++j) dist += std::pow(c.templates[a * d + j] - c.templates[b * d + j], 2);
      CHECK(std::sqrt(dist) > 4.0 * 0.4);
    }
  }
}

TEST_CASE("mel frame count") {
  MelConfig cfg;
  CHECK(cfg.window_samples() == 800);
  CHECK(cfg.shift_samples() == 200);
  CHECK(MelFrameCount(16000, cfg) == 77);
  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const auto len = static_cast<std::size_t>(rng.UniformInt(800, 40000));
    std::vector<float> wave(len, 0.0f);
    const auto f = MelFeatures(wave, cfg);
    CHECK(f.frames == (len - 800) / 200 + 1);
    CHECK(f.dim == 80);
  }
  std::vector<float> short_wave(799, 0.0f);
  CHECK_THROWS_AS(MelFeatures(short_wave, cfg), DataError);
}

TEST_CASE("silence sits at the log floor") {
  MelConfig cfg;
  std::vector<float> wave(4000, 0.0f);
  const auto f = MelFeatures(wave, cfg);
  for (float v : f.values) CHECK(v == static_cast<float>(std::log(cfg.log_floor)));
}

TEST_CASE("a tone at a filter centre peaks in that filter") {
  MelConfig cfg;
  for (std::size_t bin : {10u, 40u, 70u}) {
    const double hz = MelCenterHz(bin, cfg);
    std::vector<float> wave(8000);
    for (std::size_t i = 0; i < wave.size(); ++i) {
      wave[i] = static_cast<float>(0.5 * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / cfg.sample_rate));
    }
    const auto f = MelFeatures(wave, cfg);
    for (std::size_t t = 0; t < f.frames; ++t) {
      std::size_t best = 0;
      for (std::size_t m = 0; m < f.dim; ++m) {
        if (f.at(t, m) > f.at(t, best)) best = m;
      }
      CAPTURE(bin);
      CHECK(best == bin);
    }
  }
}

TEST_CASE("wav reader") {
  auto dir = TempDir("wav");
  const fs::path path = dir / "tone.wav";
  {
    std::ofstream os(path, std::ios::binary);
    auto u32 = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](std::uint16_t v) { os.write(reinterpret_cast<const char*>(&v), 2); };
    const std::int16_t samples[] = {0, 16384, -16384, 32767};
    os << "RIFF";
    u32(36 + sizeof(samples));
    os << "WAVEfmt ";
    u32(16);
    u16(1);
    u16(1);
    u32(16000);
    u32(32000);
    u16(2);
    u16(16);
    os << "data";
    u32(sizeof(samples));
    os.write(reinterpret_cast<const char*>(samples), sizeof(samples));
  }
  double rate = 0.0;
  auto wave = ReadWavPcm16(path, &rate);
  CHECK(rate == 16000.0);
  REQUIRE(wave.size() == 4);
  CHECK(wave[1] == doctest::Approx(0.5));
  CHECK(wave[2] == doctest::Approx(-0.5));
  std::ofstream(dir / "bad.wav") << "nope";
  CHECK_THROWS_AS(ReadWavPcm16(dir / "bad.wav"), DataError);
  fs::remove_all(dir);
}

TEST_CASE("dataset save and load") {
  auto dir = TempDir("dataset");
  auto c = GenerateSynthetic(SmallSpec());
  SaveDataset(c.dev, dir / "dev.jsonl", "feats", nlohmann::ordered_json{{"split", "dev"}});
  auto loaded = LoadDataset(dir / "dev.jsonl");
  CHECK(loaded.dataset == c.dev);
  CHECK(loaded.header["split"] == "dev");

  SUBCASE("truncated feature file") {
    fs::path victim;
    for (const auto& e : fs::directory_iterator(dir / "feats")) victim = e.path();
    fs::resize_file(victim, fs::file_size(victim) - 3);
    CHECK_THROWS_WITH_AS(LoadDataset(dir / "dev.jsonl"), doctest::Contains(victim.filename().string().c_str()),
                         IntegrityError);
  }
  SUBCASE("missing feature file") {
    fs::path victim;
    for (const auto& e : fs::directory_iterator(dir / "feats")) victim = e.path();
    fs::remove(victim);
    CHECK_THROWS_WITH_AS(LoadDataset(dir / "dev.jsonl"), doctest::Contains(victim.filename().string().c_str()),
                         IntegrityError);
  }
  SUBCASE("missing manifest") {
    CHECK_THROWS_AS(LoadDataset(dir / "none.jsonl"), IntegrityError);
  }
  SUBCASE("feature file round trip is bit exact") {
    FeatureSequence f{2, 3, {1.5f, -0.0f, 3e-38f, 7.25f, 1e30f, -2.0f}};
    WriteFeatureFile(dir / "x.atfx", f);
    CHECK(ReadFeatureFile(dir / "x.atfx") == f);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace atisr
