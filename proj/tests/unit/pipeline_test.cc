// tests/unit/pipeline_test.cc

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


#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "atisr/error.h"
#include "atisr/pipeline/experiment.h"
#include "atisr/util/file.h"
#include "support/fixtures.h"

namespace atisr {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("atisr-pipeline-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("experiment config serialization") {
  ExperimentConfig c = testing::SmokeConfig(11);
  auto j = c.ToJson();
  CHECK(ExperimentConfig::FromJson(j).ToJson() == j);
  CHECK(c.TeacherHyper().seed == 11);
  CHECK(c.StudentHyper().seed == 12);
  CHECK(c.synthetic.seed == 11);

  auto unknown = j;
  unknown["colour"] = "blue";
  CHECK_THROWS_WITH_AS(ExperimentConfig::FromJson(unknown), doctest::Contains("colour"),
                       ConfigurationError);
  auto dims = j;
  dims["architecture"]["feature_dim"] = 7;
  CHECK_THROWS_AS(ExperimentConfig::FromJson(dims), ConfigurationError);
  auto bad_isr = j;
  bad_isr["isr"]["main_blocks"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::FromJson(bad_isr), ConfigurationError);
  CHECK_THROWS_WITH_AS(ExperimentConfig::Load("/nonexistent/cfg.json"),
                       doctest::Contains("/nonexistent/cfg.json"), ConfigurationError);
}

TEST_CASE("artifact names") {
  IsrConfig c;
  c.look_back = 4;
  c.look_ahead = 1;
  c.state = StatePolicy::kReset;
  c.init = InitPolicy::kBlockBegin;
  CHECK(SegmentationTag(c) == "m1-lb4-la1");
  CHECK(StudentTag(c) == "m1-lb4-la1-reset-m");
  CHECK(EvalLabel(DecodeMode::kFull, c) == "topline");
  CHECK(EvalLabel(DecodeMode::kBaseline, c) == "baseline-m1");
  CHECK(EvalLabel(DecodeMode::kIsr, c) == "isr-m1-lb4-la1-reset-m");
  ExperimentLayout layout("/run");
  CHECK(layout.Student(c) == fs::path("/run/checkpoints/student-m1-lb4-la1-reset-m"));
  CHECK(layout.Distilled(c, "dev") == fs::path("/run/distill/m1-lb4-la1.dev.jsonl"));
  CHECK(DefaultCheckpoint(layout, DecodeMode::kBaseline, c) == layout.Teacher());
}

std::string RunAll(const fs::path& root, const ExperimentConfig& cfg) {
  ExperimentLayout layout(root);
  StageOptions opt;
  GenerateDataStage(cfg, layout, opt);
  TrainTeacherStage(cfg, layout, opt);
  DistillStage(cfg, layout, cfg.isr, opt);
  TrainStudentStage(cfg, layout, cfg.isr, opt);
  for (DecodeMode mode : {DecodeMode::kFull, DecodeMode::kBaseline, DecodeMode::kIsr}) {
    EvaluateStage(cfg, layout, mode, cfg.isr, "test", DefaultCheckpoint(layout, mode, cfg.isr),
                  EvalLabel(mode, cfg.isr), opt);
  }
  ReportStage(layout);
  std::string all;
  for (const std::string name : {"topline", "baseline-m1", "isr-m1-lb0-la1-keep-last-char"}) {
    all += ReadFileBytes(layout.Report(name));
    all += ReadFileBytes(layout.Hypotheses(name));
  }
  return all + ReadFileBytes(layout.Summary());
}

TEST_CASE("the whole pipeline runs from on-disk artifacts and reruns identically") {
  const auto cfg = testing::SmokeConfig();
  auto a = TempDir("a"), b = TempDir("b");
  const std::string first = RunAll(a, cfg);
  const std::string second = RunAll(b, cfg);
  CHECK(first == second);
  ExperimentLayout layout(a);
  const std::string summary = ReadFileBytes(layout.Summary());
  CHECK(summary.find("topline") != std::string::npos);
  CHECK(summary.find("isr-m1-lb0-la1-keep-last-char") != std::string::npos);

  const StageOptions opt;
  const fs::path hyp = a / "decoded.jsonl";
  DecodeStage(cfg, layout, DecodeMode::kIsr, cfg.isr, "test", layout.Student(cfg.isr), hyp, opt);
  std::ifstream is(hyp);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 1 + cfg.synthetic.test_size);

  IsrConfig other = cfg.isr;
  other.look_ahead = 3;
  CHECK_THROWS_WITH_AS(TrainStudentStage(cfg, layout, other, opt), doctest::Contains("m1-lb0-la3"),
                       IntegrityError);
  CHECK_THROWS_WITH_AS(EvaluateStage(cfg, layout, DecodeMode::kIsr, other, "test",
                                     layout.Student(other), "x", opt),
                       doctest::Contains("student-m1-lb0-la3"), IntegrityError);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("featurize writes a dataset from wav files") {
  auto dir = TempDir("featurize");
  {
    std::ofstream os(dir / "a.wav", std::ios::binary);
    auto u32 = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](std::uint16_t v) { os.write(reinterpret_cast<const char*>(&v), 2); };
    const std::uint32_t samples = 16000;
    os << "RIFF";
    u32(36 + 2 * samples);
    os << "WAVEfmt ";
    u32(16);
    u16(1);
    u16(1);
    u32(16000);
    u32(32000);
    u16(2);
    u16(16);
    os << "data";
    u32(2 * samples);
    for (std::uint32_t i = 0; i < samples; ++i) u16(static_cast<std::uint16_t>((i * 37) % 2000));
  }
  std::ofstream(dir / "list.tsv") << "utt1\ta.wav\thello\n";
  FeaturizeStage(dir / "list.tsv", dir / "data" / "x.jsonl", MelConfig{}, StageOptions{});
  auto loaded = LoadDataset(dir / "data" / "x.jsonl");
  REQUIRE(loaded.dataset.size() == 1);
  CHECK(loaded.dataset.utterances[0].features.frames == 77);
  CHECK(loaded.dataset.utterances[0].transcript == "hello");
  std::ofstream(dir / "bad.tsv") << "utt1\tmissing.wav\thello\n";
  CHECK_THROWS_WITH_AS(FeaturizeStage(dir / "bad.tsv", dir / "y.jsonl", MelConfig{}, StageOptions{}),
                       doctest::Contains("missing.wav"), IntegrityError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace atisr
