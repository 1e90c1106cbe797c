// pipeline/experiment.cc

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

#include "atisr/pipeline/experiment.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "atisr/corpus/dataset.h"
#include "atisr/distill/student_data.h"
#include "atisr/error.h"
#include "atisr/isr/decode.h"
#include "atisr/isr/student.h"
#include "atisr/seq2seq/teacher.h"
#include "atisr/util/file.h"
#include "atisr/util/hash.h"

namespace atisr {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

ArchConfig SyntheticArch() {
  ArchConfig a;
  a.feature_dim = 16;
  a.projection_dim = 32;
  a.encoder_hidden = 64;
  a.embedding_dim = 32;
  a.decoder_hidden = 128;
  a.attention_hidden = 64;
  a.scorer = ScorerKind::kMlp;
  return a;
}

TrainHyper ExperimentConfig::TeacherHyper() const {
  TrainHyper h = teacher;
  h.seed = seed;
  return h;
}

TrainHyper ExperimentConfig::StudentHyper() const {
  TrainHyper h = student;
  h.seed = seed + 1;
  return h;
}

namespace {

ojson HyperJson(const TrainHyper& h) {
  ojson j = h;
  j.erase("seed");
  return j;
}

}  // namespace

ojson ExperimentConfig::ToJson() const {
  ojson j;
  j["seed"] = seed;
  ojson syn = synthetic;
  syn.erase("seed");
  j["synthetic"] = syn;
  j["architecture"] = arch;
  j["teacher_training"] = HyperJson(teacher);
  j["student_training"] = HyperJson(student);
  j["isr"] = isr;
  j["eval_split"] = eval_split;
  return j;
}

ExperimentConfig ExperimentConfig::FromJson(const ojson& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw ConfigurationError("experiment config must be a JSON object");
  static const std::vector<std::string> kKeys = {"seed",  "synthetic", "architecture",
                                                 "teacher_training", "student_training",
                                                 "isr", "eval_split"};
  for (const auto& item : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
      throw ConfigurationError("unknown config key '" + item.key() + "'");
    }
  }
  try {
    c.seed = j.value("seed", c.seed);
    if (j.contains("synthetic")) c.synthetic = j["synthetic"].get<SyntheticSpec>();
    if (j.contains("architecture")) c.arch = j["architecture"].get<ArchConfig>();
    if (j.contains("teacher_training")) c.teacher = j["teacher_training"].get<TrainHyper>();
    if (j.contains("student_training")) c.student = j["student_training"].get<TrainHyper>();
    if (j.contains("isr")) c.isr = j["isr"].get<IsrConfig>();
    c.eval_split = j.value("eval_split", c.eval_split);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid experiment config: ") + e.what());
  }
  c.synthetic.seed = c.seed;
  c.teacher.seed = c.seed;
  c.student.seed = c.seed + 1;
  c.isr.Validate();
  if (c.arch.feature_dim != c.synthetic.feature_dim) {
    throw ConfigurationError("architecture feature_dim " + std::to_string(c.arch.feature_dim) +
                             " differs from synthetic feature_dim " +
                             std::to_string(c.synthetic.feature_dim));
  }
  return c;
}

ExperimentConfig ExperimentConfig::Load(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigurationError("config file " + path.string() + " not found");
  ojson j;
  try {
    j = ojson::parse(ReadFileBytes(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
  try {
    return FromJson(j);
  } catch (const ConfigurationError& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
}

fs::path ExperimentLayout::Manifest(const std::string& split) const {
  return root_ / "data" / (split + ".jsonl");
}
fs::path ExperimentLayout::Vocab() const { return root_ / "data" / "vocab.txt"; }
fs::path ExperimentLayout::Teacher() const { return root_ / "checkpoints" / "teacher"; }
fs::path ExperimentLayout::Distilled(const IsrConfig& cfg, const std::string& split) const {
  return root_ / "distill" / (SegmentationTag(cfg) + "." + split + ".jsonl");
}
fs::path ExperimentLayout::Student(const IsrConfig& cfg) const {
  return root_ / "checkpoints" / ("student-" + StudentTag(cfg));
}
fs::path ExperimentLayout::ReportDir() const { return root_ / "reports"; }
fs::path ExperimentLayout::Report(const std::string& label) const {
  return ReportDir() / (label + ".json");
}
fs::path ExperimentLayout::Hypotheses(const std::string& label) const {
  return ReportDir() / (label + ".hyp.jsonl");
}
fs::path ExperimentLayout::Summary() const { return ReportDir() / "summary.txt"; }

std::string SegmentationTag(const IsrConfig& cfg) {
  return "m" + std::to_string(cfg.main_blocks) + "-lb" + std::to_string(cfg.look_back) + "-la" +
         std::to_string(cfg.look_ahead);
}

std::string StudentTag(const IsrConfig& cfg) {
  return SegmentationTag(cfg) + "-" + ToString(cfg.state) + "-" + ToString(cfg.init);
}

std::string EvalLabel(DecodeMode mode, const IsrConfig& cfg) {
  switch (mode) {
    case DecodeMode::kFull: return "topline";
    case DecodeMode::kBaseline: return "baseline-m" + std::to_string(cfg.main_blocks);
    case DecodeMode::kIsr: return "isr-" + StudentTag(cfg);
  }
  return "report";
}

namespace {

void Log(const StageOptions& opt, const std::string& msg) {
  if (opt.log) opt.log(msg);
}

Dataset LoadSplit(const ExperimentLayout& layout, const std::string& split) {
  return LoadDataset(layout.Manifest(split)).dataset;
}

Vocabulary LoadVocab(const ExperimentLayout& layout) {
  if (!fs::exists(layout.Vocab())) {
    throw IntegrityError("vocabulary " + layout.Vocab().string() + " does not exist");
  }
  return Vocabulary::Load(layout.Vocab());
}

EpochCallback EpochLogger(const StageOptions& opt, const std::string& what) {
  return [&opt, what](const EpochRecord& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s epoch %zu: train %.4f dev %.4f grad-norm %.3f",
                  what.c_str(), r.epoch, r.train_loss, r.dev_loss, r.mean_grad_norm);
    Log(opt, buf);
  };
}

// id -> feature path relative to `base`, read from a dataset manifest.
std::map<std::string, std::string> FeaturePaths(const fs::path& manifest, const fs::path& base) {
  std::map<std::string, std::string> out;
  std::ifstream is(manifest);
  std::string line;
  const fs::path dir = manifest.parent_path();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto rec = ojson::parse(line);
    if (rec.contains("header")) continue;
    const fs::path file = dir / rec.at("feature_path").get<std::string>();
    out[rec.at("id").get<std::string>()] = fs::relative(file, base).generic_string();
  }
  return out;
}

}  // namespace

void GenerateDataStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                       const StageOptions& opt) {
  SyntheticCorpus corpus = GenerateSynthetic(cfg.synthetic);
  fs::create_directories(layout.Vocab().parent_path());
  corpus.vocabulary.Save(layout.Vocab());
  const std::string vocab_hash = Sha256File(layout.Vocab());
  const std::pair<const char*, const Dataset*> splits[] = {
      {"train", &corpus.train}, {"dev", &corpus.dev}, {"test", &corpus.test}};
  for (const auto& [name, data] : splits) {
    ojson header;
    header["stage"] = "gen-data";
    header["split"] = name;
    header["experiment"] = cfg.ToJson();
    header["vocabulary_sha256"] = vocab_hash;
    SaveDataset(*data, layout.Manifest(name), fs::path("features") / name, header);
    Log(opt, std::string("wrote ") + std::to_string(data->size()) + " " + name + " utterances");
  }
}

void FeaturizeStage(const fs::path& list, const fs::path& manifest, const MelConfig& mel,
                    const StageOptions& opt) {
  std::ifstream is(list);
  if (!is) throw IntegrityError("cannot open audio list " + list.string());
  const fs::path base = list.has_parent_path() ? list.parent_path() : fs::path(".");
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 3) {
      throw DataError(list.string() + ":" + std::to_string(line_no) +
                      ": expected id, wav path and transcript separated by tabs");
    }
    fs::path wav = fields[1];
    if (wav.is_relative()) wav = base / wav;
    if (!fs::exists(wav)) throw IntegrityError("audio file " + wav.string() + " does not exist");
    double rate = 0.0;
    std::vector<float> samples = ReadWavPcm16(wav, &rate);
    if (rate != mel.sample_rate) {
      throw DataError(wav.string() + ": sample rate " + std::to_string(rate) + ", expected " +
                      std::to_string(mel.sample_rate));
    }
    data.utterances.push_back({fields[0], MelFeatures(samples, mel), fields[2]});
  }
  ojson header;
  header["stage"] = "featurize";
  header["audio_list_sha256"] = Sha256File(list);
  header["mel"] = {{"sample_rate", mel.sample_rate}, {"n_mels", mel.n_mels},
                   {"window_ms", mel.window_ms},     {"shift_ms", mel.shift_ms},
                   {"n_fft", mel.n_fft},             {"low_hz", mel.low_hz},
                   {"high_hz", mel.high_hz},         {"log_floor", mel.log_floor}};
  SaveDataset(data, manifest, fs::path("features"), header);
  Log(opt, "featurized " + std::to_string(data.size()) + " utterances");
}

std::string TrainTeacherStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                              const StageOptions& opt) {
  const Vocabulary vocab = LoadVocab(layout);
  const Dataset train = LoadSplit(layout, "train");
  const Dataset dev = LoadSplit(layout, "dev");
  TrainHyper hyper = cfg.TeacherHyper();
  hyper.threads = opt.threads;
  TeacherRun run = TrainTeacher(train, dev, vocab, cfg.arch, hyper, EpochLogger(opt, "teacher"));
  run.model.metadata["stage"] = "train-teacher";
  run.model.metadata["experiment"] = cfg.ToJson();
  run.model.metadata["train_manifest_sha256"] = Sha256File(layout.Manifest("train"));
  run.model.metadata["dev_manifest_sha256"] = Sha256File(layout.Manifest("dev"));
  run.model.metadata["vocabulary_sha256"] = Sha256File(layout.Vocab());
  run.model.metadata["training_log"] = run.log.ToJson();
  const std::string hash = SaveCheckpoint(run.model, layout.Teacher());
  Log(opt, "teacher saved (best epoch " + std::to_string(run.log.best_epoch) + ")");
  return hash;
}

void DistillStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                  const IsrConfig& isr, const StageOptions& opt) {
  const Seq2SeqModel teacher = LoadCheckpoint(layout.Teacher());
  for (const std::string split : {"train", "dev"}) {
    const fs::path manifest = layout.Manifest(split);
    const Dataset corpus = LoadSplit(layout, split);
    StudentDataset data = BuildStudentDataset(teacher, corpus, isr, opt.threads);
    const fs::path out = layout.Distilled(isr, split);
    data.header["stage"] = "distill";
    data.header["split"] = split;
    data.header["experiment"] = cfg.ToJson();
    data.header["corpus_manifest"] = fs::relative(manifest, out.parent_path()).generic_string();
    data.header["corpus_manifest_sha256"] = Sha256File(manifest);
    fs::create_directories(out.parent_path());
    SaveStudentDataset(data, out, FeaturePaths(manifest, out.parent_path()));
    Log(opt, "distilled " + std::to_string(data.size()) + " " + split + " utterances (" +
                 std::to_string(data.failures.size()) + " skipped)");
  }
}

std::string TrainStudentStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                              const IsrConfig& isr, const StageOptions& opt) {
  const Vocabulary vocab = LoadVocab(layout);
  std::map<std::string, StudentDataset> data;
  std::map<std::string, Dataset> corpus;
  for (const std::string split : {"train", "dev"}) {
    const fs::path path = layout.Distilled(isr, split);
    if (!fs::exists(path)) {
      throw IntegrityError("distilled dataset " + path.string() +
                           " does not exist (run distill with the same segmentation first)");
    }
    data[split] = LoadStudentDataset(path);
    corpus[split] = LoadSplit(layout, split);
  }
  TrainHyper hyper = cfg.StudentHyper();
  hyper.threads = opt.threads;
  StudentRun run = TrainStudent(data["train"], corpus["train"], data["dev"], corpus["dev"], vocab,
                                cfg.arch, isr, hyper, EpochLogger(opt, "student " + StudentTag(isr)));
  run.model.metadata["stage"] = "train-student";
  run.model.metadata["experiment"] = cfg.ToJson();
  run.model.metadata["isr_config"] = isr;
  run.model.metadata["teacher_sha256"] = data["train"].teacher_hash;
  run.model.metadata["train_distill_sha256"] = Sha256File(layout.Distilled(isr, "train"));
  run.model.metadata["dev_distill_sha256"] = Sha256File(layout.Distilled(isr, "dev"));
  run.model.metadata["training_log"] = run.log.ToJson();
  const std::string hash = SaveCheckpoint(run.model, layout.Student(isr));
  Log(opt, "student " + StudentTag(isr) + " saved (best epoch " +
               std::to_string(run.log.best_epoch) + ")");
  return hash;
}

fs::path DefaultCheckpoint(const ExperimentLayout& layout, DecodeMode mode, const IsrConfig& isr) {
  return mode == DecodeMode::kIsr ? layout.Student(isr) : layout.Teacher();
}

void DecodeStage(const ExperimentConfig& cfg, const ExperimentLayout& layout, DecodeMode mode,
                 const IsrConfig& isr, const std::string& split, const fs::path& checkpoint,
                 const fs::path& output, const StageOptions& opt) {
  const Seq2SeqModel model = LoadCheckpoint(checkpoint);
  const Dataset data = LoadSplit(layout, split);
  EvalReport report = Evaluate(model, data, mode, isr, opt.threads);
  std::ostringstream os;
  ojson head;
  head["header"] = {{"stage", "decode"},
                    {"mode", ToString(mode)},
                    {"isr_config", isr},
                    {"experiment", cfg.ToJson()},
                    {"model_sha256", report.model_hash},
                    {"dataset_sha256", report.dataset_hash}};
  os << head.dump() << '\n';
  for (const auto& u : report.utterances) {
    os << HypothesisToJson(u.id, u.decode, model.vocab()).dump() << '\n';
  }
  WriteFileBytes(output, os.str());
  Log(opt, "decoded " + std::to_string(data.size()) + " utterances");
}

EvalReport EvaluateStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                         DecodeMode mode, const IsrConfig& isr, const std::string& split,
                         const fs::path& checkpoint, const std::string& label,
                         const StageOptions& opt) {
  const Seq2SeqModel model = LoadCheckpoint(checkpoint);
  const Dataset data = LoadSplit(layout, split);
  EvalReport report = Evaluate(model, data, mode, isr, opt.threads);
  report.label = label;
  for (const auto& w : report.warnings) Log(opt, "warning: " + w);

  ojson j;
  j["stage"] = "eval";
  j["split"] = split;
  j["experiment"] = cfg.ToJson();
  j["report"] = report.ToJson();
  WriteFileBytes(layout.Report(label), j.dump(2) + "\n");

  std::ostringstream os;
  for (const auto& u : report.utterances) {
    os << HypothesisToJson(u.id, u.decode, model.vocab()).dump() << '\n';
  }
  WriteFileBytes(layout.Hypotheses(label), os.str());
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s: CER %.2f%% over %zu characters", label.c_str(),
                100.0 * report.corpus_cer, report.total_reference);
  Log(opt, buf);
  return report;
}

std::string ReportStage(const ExperimentLayout& layout) {
  std::vector<fs::path> files;
  if (fs::exists(layout.ReportDir())) {
    for (const auto& e : fs::directory_iterator(layout.ReportDir())) {
      const std::string name = e.path().filename().string();
      if (e.path().extension() == ".json" && name.find(".hyp.") == std::string::npos) {
        files.push_back(e.path());
      }
    }
  }
  if (files.empty()) {
    throw IntegrityError("no evaluation reports under " + layout.ReportDir().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<EvalReport> reports;
  for (const auto& f : files) {
    try {
      reports.push_back(EvalReport::FromJson(ojson::parse(ReadFileBytes(f)).at("report")));
    } catch (const nlohmann::json::exception& e) {
      throw IntegrityError(f.string() + ": " + e.what());
    }
  }
  const std::string table = FormatReportTable(reports);
  WriteFileBytes(layout.Summary(), table);
  return table;
}

}  // namespace atisr
