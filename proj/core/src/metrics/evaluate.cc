// metrics/evaluate.cc

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

#include "atisr/metrics/evaluate.h"

#include <cstdio>
#include <sstream>

#include "atisr/error.h"
#include "atisr/metrics/cer.h"
#include "atisr/seq2seq/teacher.h"
#include "atisr/seq2seq/trainer.h"
#include "atisr/util/binary_io.h"
#include "atisr/util/hash.h"

namespace atisr {

std::string ToString(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kFull: return "full";
    case DecodeMode::kIsr: return "isr";
    case DecodeMode::kBaseline: return "baseline";
  }
  return "full";
}

DecodeMode ParseDecodeMode(const std::string& name) {
  if (name == "full") return DecodeMode::kFull;
  if (name == "isr") return DecodeMode::kIsr;
  if (name == "baseline") return DecodeMode::kBaseline;
  throw ConfigurationError("unknown decode mode '" + name + "' (expected full, isr or baseline)");
}

std::string DatasetHash(const Dataset& dataset) {
  std::string bytes;
  for (const auto& u : dataset.utterances) {
    binary::AppendLe<std::uint64_t>(bytes, u.id.size());
    bytes += u.id;
    binary::AppendLe<std::uint64_t>(bytes, u.transcript.size());
    bytes += u.transcript;
    binary::AppendLe<std::uint64_t>(bytes, u.features.frames);
    binary::AppendLe<std::uint64_t>(bytes, u.features.dim);
    for (float v : u.features.values) binary::AppendLe<float>(bytes, v);
  }
  return Sha256Hex(bytes);
}

namespace {

IncrementalHypothesis DecodeOne(const Seq2SeqModel& model, const FeatureSequence& features,
                                DecodeMode mode, const IsrConfig& cfg) {
  switch (mode) {
    case DecodeMode::kIsr: return IsrDecode(model, features, cfg);
    case DecodeMode::kBaseline: return BaselineIsrDecode(model, features, cfg);
    case DecodeMode::kFull: break;
  }
  GreedyResult g = GreedyDecode(model, features, BlockCount(features.frames) + 1);
  IncrementalHypothesis hyp;
  for (TokenId id : g.tokens) {
    if (!Vocabulary::IsSpecial(id)) hyp.transcript.push_back(id);
  }
  hyp.steps.push_back(std::move(g.tokens));
  hyp.frame_offsets.push_back(static_cast<std::int64_t>(features.frames));
  return hyp;
}

}  // namespace

EvalReport Evaluate(const Seq2SeqModel& model, const Dataset& dataset, DecodeMode mode,
                    const IsrConfig& cfg, std::size_t threads) {
  cfg.Validate();
  EvalReport report;
  report.mode = mode;
  report.config = cfg;
  report.model_hash = ModelHash(model);
  report.model_role = ToString(model.role());
  report.dataset_hash = DatasetHash(dataset);
  if (mode == DecodeMode::kIsr && model.role() != ModelRole::kStudent) {
    report.warnings.push_back("incremental decoding of a model not trained with </m>");
  }
  if (mode != DecodeMode::kIsr && model.role() == ModelRole::kStudent) {
    report.warnings.push_back(ToString(mode) + " decoding of a model trained with </m>");
  }

  report.utterances.resize(dataset.size());
  ParallelFor(dataset.size(), threads, [&](std::size_t i) {
    const Utterance& u = dataset.utterances[i];
    UtteranceScore& s = report.utterances[i];
    s.id = u.id;
    s.reference = u.transcript;
    s.decode = DecodeOne(model, u.features, mode, cfg);
    s.hypothesis = model.vocab().Decode(s.decode.transcript);
    s.edits = CharacterEdits(s.reference, s.hypothesis);
    s.reference_length = SplitCharacters(s.reference).size();
    s.cer = Cer(s.reference, s.hypothesis);
  });

  double duration = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    report.total_edits += report.utterances[i].edits;
    report.total_reference += report.utterances[i].reference_length;
    duration += FramesToSeconds(dataset.utterances[i].features.frames);
  }
  if (report.total_reference > 0) {
    report.corpus_cer =
        static_cast<double>(report.total_edits) / static_cast<double>(report.total_reference);
  }
  if (mode == DecodeMode::kFull) {
    report.delay_seconds = dataset.empty() ? 0.0 : duration / static_cast<double>(dataset.size());
  } else {
    report.delay_seconds = DelaySeconds(cfg);
  }
  return report;
}

nlohmann::ordered_json EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["mode"] = ToString(mode);
  j["isr_config"] = config;
  j["model_sha256"] = model_hash;
  j["model_role"] = model_role;
  j["dataset_sha256"] = dataset_hash;
  j["utterances"] = utterances.size();
  j["total_edits"] = total_edits;
  j["total_reference_chars"] = total_reference;
  j["corpus_cer"] = corpus_cer;
  j["delay_seconds"] = delay_seconds;
  j["warnings"] = warnings;
  j["per_utterance"] = nlohmann::ordered_json::array();
  for (const auto& u : utterances) {
    j["per_utterance"].push_back({{"id", u.id},
                                  {"reference", u.reference},
                                  {"hypothesis", u.hypothesis},
                                  {"edits", u.edits},
                                  {"reference_chars", u.reference_length},
                                  {"cer", u.cer}});
  }
  return j;
}

EvalReport EvalReport::FromJson(const nlohmann::ordered_json& j) {
  EvalReport r;
  r.label = j.value("label", std::string());
  r.mode = ParseDecodeMode(j.at("mode").get<std::string>());
  r.config = j.at("isr_config").get<IsrConfig>();
  r.model_hash = j.value("model_sha256", std::string());
  r.model_role = j.value("model_role", std::string());
  r.dataset_hash = j.value("dataset_sha256", std::string());
  r.total_edits = j.at("total_edits").get<std::size_t>();
  r.total_reference = j.at("total_reference_chars").get<std::size_t>();
  r.corpus_cer = j.at("corpus_cer").get<double>();
  r.delay_seconds = j.at("delay_seconds").get<double>();
  r.warnings = j.value("warnings", std::vector<std::string>());
  for (const auto& u : j.value("per_utterance", nlohmann::ordered_json::array())) {
    UtteranceScore s;
    s.id = u.at("id").get<std::string>();
    s.reference = u.at("reference").get<std::string>();
    s.hypothesis = u.at("hypothesis").get<std::string>();
    s.edits = u.at("edits").get<std::size_t>();
    s.reference_length = u.at("reference_chars").get<std::size_t>();
    s.cer = u.at("cer").get<double>();
    r.utterances.push_back(std::move(s));
  }
  return r;
}

std::string FormatReportTable(const std::vector<EvalReport>& reports) {
  const std::vector<std::string> head = {"System", "Mode", "Main", "Back", "Ahead",
                                         "State", "Init", "Delay (sec)", "CER (%)"};
  std::vector<std::vector<std::string>> rows;
  auto fmt = [](double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return std::string(buf);
  };
  for (const auto& r : reports) {
    const bool inc = r.mode != DecodeMode::kFull;
    const bool isr = r.mode == DecodeMode::kIsr;
    rows.push_back({r.label.empty() ? ToString(r.mode) : r.label, ToString(r.mode),
                    inc ? std::to_string(r.config.main_blocks) : "-",
                    isr ? std::to_string(r.config.look_back) : "-",
                    isr ? std::to_string(r.config.look_ahead) : "-",
                    isr ? ToString(r.config.state) : "-",
                    isr ? ToString(r.config.init) : "-",
                    fmt(r.delay_seconds, 2) + (inc ? "" : " (avg)"), fmt(100.0 * r.corpus_cer, 2)});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << cells[c] << std::string(width[c] - cells[c].size(), ' ');
    }
    os << '\n';
  };
  line(head);
  std::size_t total = 2 * (head.size() - 1);
  for (std::size_t w : width) total += w;
  os << std::string(total, '-') << '\n';
  for (const auto& row : rows) line(row);
  return os.str();
}

}  // namespace atisr
