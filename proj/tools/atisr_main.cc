// tools/atisr_main.cc

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

// Command-line front end of the recognition pipeline.
//
// Usage:
//   atisr gen-data      --config cfg.json --out run/
//   atisr train-teacher --config cfg.json --out run/
//   atisr distill       --config cfg.json --out run/ --look-ahead 1
//   atisr train-student --config cfg.json --out run/ --look-ahead 1 --state keep
//   atisr eval          --config cfg.json --out run/ --mode isr --look-ahead 1
//   atisr report        --out run/
//
// Exit status: 0 on success, 1 on a pipeline failure, 2 on bad usage.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "atisr/error.h"
#include "atisr/pipeline/experiment.h"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string out = ".";
};

struct IsrFlags {
  std::optional<std::size_t> main_blocks;
  std::optional<std::size_t> look_back;
  std::optional<std::size_t> look_ahead;
  std::optional<std::string> state;
  std::optional<std::string> init;
  std::optional<std::size_t> max_step_outputs;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--config", f.config, "Experiment config (JSON)");
    cmd->add_option("--seed", f.seed, "Override the config seed");
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--out", f.out, "Experiment output directory");
}

void AddIsr(CLI::App* cmd, IsrFlags& f) {
  cmd->add_option("--main-blocks", f.main_blocks, "Main blocks per step")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--look-back", f.look_back, "Look-back blocks");
  cmd->add_option("--look-ahead", f.look_ahead, "Look-ahead blocks");
  cmd->add_option("--state", f.state, "Recurrent state across steps")
      ->check(CLI::IsMember({"keep", "reset"}));
  cmd->add_option("--init", f.init, "First decoder input of a step")
      ->check(CLI::IsMember({"m", "last-char"}));
  cmd->add_option("--max-step-outputs", f.max_step_outputs, "Token cap per step")
      ->check(CLI::PositiveNumber);
}

atisr::ExperimentConfig LoadConfig(const CommonFlags& f) {
  atisr::ExperimentConfig cfg =
      f.config.empty() ? atisr::ExperimentConfig{} : atisr::ExperimentConfig::Load(f.config);
  if (f.seed) {
    auto j = cfg.ToJson();
    j["seed"] = *f.seed;
    cfg = atisr::ExperimentConfig::FromJson(j);
  }
  return cfg;
}

atisr::IsrConfig ApplyIsr(atisr::IsrConfig cfg, const IsrFlags& f) {
  if (f.main_blocks) cfg.main_blocks = *f.main_blocks;
  if (f.look_back) cfg.look_back = *f.look_back;
  if (f.look_ahead) cfg.look_ahead = *f.look_ahead;
  if (f.state) cfg.state = atisr::ParseStatePolicy(*f.state);
  if (f.init) cfg.init = atisr::ParseInitPolicy(*f.init);
  if (f.max_step_outputs) cfg.max_step_outputs = *f.max_step_outputs;
  cfg.Validate();
  return cfg;
}

atisr::StageOptions Options(const CommonFlags& f) {
  atisr::StageOptions opt;
  opt.threads = f.threads;
  opt.log = [](const std::string& msg) { std::cerr << "atisr: " << msg << '\n'; };
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attention-transfer incremental speech recognition"};
  app.require_subcommand(1);

  CommonFlags common;
  IsrFlags isr;
  std::string mode = "isr";
  std::string split;
  std::string checkpoint;
  std::string output;
  std::string label;
  std::string audio_list;

  auto* gen = app.add_subcommand("gen-data", "Generate the synthetic corpora");
  AddCommon(gen, common);

  auto* feat = app.add_subcommand("featurize", "Log-mel features from a WAV list");
  AddCommon(feat, common, false);
  feat->add_option("--list", audio_list, "Lines of id<TAB>wav<TAB>transcript")->required();
  feat->add_option("--split", split, "Split name of the written manifest")->required();

  auto* teach = app.add_subcommand("train-teacher", "Train the full-utterance model");
  AddCommon(teach, common);

  auto* distill = app.add_subcommand("distill", "Distill segment targets from the teacher");
  AddCommon(distill, common);
  AddIsr(distill, isr);

  auto* student = app.add_subcommand("train-student", "Train the incremental model");
  AddCommon(student, common);
  AddIsr(student, isr);

  auto* decode = app.add_subcommand("decode", "Write hypotheses for a split");
  auto* eval = app.add_subcommand("eval", "Score a split and write a report");
  for (auto* cmd : {decode, eval}) {
    AddCommon(cmd, common);
    AddIsr(cmd, isr);
    cmd->add_option("--mode", mode, "Decoding mode")
        ->check(CLI::IsMember({"full", "isr", "baseline"}));
    cmd->add_option("--split", split, "Split to decode (default: config eval_split)");
    cmd->add_option("--checkpoint", checkpoint, "Checkpoint stem (default: by mode)");
  }
  decode->add_option("--output", output, "Hypothesis file (default: <out>/<label>.hyp.jsonl)");
  eval->add_option("--label", label, "Report name");

  auto* report = app.add_subcommand("report", "Tabulate all reports");
  AddCommon(report, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const atisr::ExperimentLayout layout(common.out);
    const atisr::StageOptions opt = Options(common);
    if (feat->parsed()) {
      atisr::FeaturizeStage(audio_list, layout.Manifest(split), atisr::MelConfig{}, opt);
      return 0;
    }
    if (report->parsed()) {
      std::cout << atisr::ReportStage(layout);
      return 0;
    }
    const atisr::ExperimentConfig cfg = LoadConfig(common);
    const atisr::IsrConfig isr_cfg = ApplyIsr(cfg.isr, isr);
    if (gen->parsed()) {
      atisr::GenerateDataStage(cfg, layout, opt);
    } else if (teach->parsed()) {
      std::cout << atisr::TrainTeacherStage(cfg, layout, opt) << '\n';
    } else if (distill->parsed()) {
      atisr::DistillStage(cfg, layout, isr_cfg, opt);
    } else if (student->parsed()) {
      std::cout << atisr::TrainStudentStage(cfg, layout, isr_cfg, opt) << '\n';
    } else {
      const atisr::DecodeMode m = atisr::ParseDecodeMode(mode);
      const std::string sp = split.empty() ? cfg.eval_split : split;
      const std::string ckpt =
          checkpoint.empty() ? atisr::DefaultCheckpoint(layout, m, isr_cfg).string() : checkpoint;
      const std::string name = label.empty() ? atisr::EvalLabel(m, isr_cfg) : label;
      if (decode->parsed()) {
        const std::string dest = output.empty() ? layout.Hypotheses(name).string() : output;
        atisr::DecodeStage(cfg, layout, m, isr_cfg, sp, ckpt, dest, opt);
      } else {
        atisr::EvalReport r = atisr::EvaluateStage(cfg, layout, m, isr_cfg, sp, ckpt, name, opt);
        std::cout << atisr::FormatReportTable({r});
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "atisr: error: " << e.what() << '\n';
    return 1;
  }
}
