// distill/student_data.cc

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

#include "atisr/distill/student_data.h"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "atisr/error.h"
#include "atisr/seq2seq/teacher.h"
#include "atisr/seq2seq/trainer.h"
#include "atisr/util/file.h"

namespace atisr {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormat = "atisr-student-data";
constexpr int kVersion = 1;

StudentExample DistillOne(const Seq2SeqModel& teacher, const Utterance& u, const IsrConfig& cfg) {
  AttentionMatrix attention = CaptureAlignment(teacher, u.features, u.transcript);
  StudentExample ex;
  for (std::size_t t = 0; t < attention.rows; ++t) {
    double sum = 0.0;
    for (double v : attention.row(t)) sum += v;
    ex.max_row_sum_error = std::max(ex.max_row_sum_error, std::abs(sum - 1.0));
  }
  ex.alignment = ExtractMonotonicAlignment(attention);
  TokenSequence chars = MakeTeacherForcing(teacher.vocab(), u.transcript).targets;
  chars.pop_back();
  ex.segments =
      SegmentTargets(ex.alignment, chars, cfg, BlockCount(u.features.frames), u.id);
  return ex;
}

}  // namespace

StudentDataset BuildStudentDataset(const Seq2SeqModel& teacher, const Dataset& corpus,
                                   const IsrConfig& cfg, std::size_t threads) {
  cfg.Validate();
  StudentDataset out;
  out.config = cfg;
  out.teacher_hash = ModelHash(teacher);

  std::vector<std::optional<StudentExample>> results(corpus.size());
  std::vector<std::string> errors(corpus.size());
  ParallelFor(corpus.size(), threads, [&](std::size_t i) {
    try {
      results[i] = DistillOne(teacher, corpus.utterances[i], cfg);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (results[i]) {
      out.examples.push_back(std::move(*results[i]));
    } else {
      out.failures.push_back({corpus.utterances[i].id, errors[i]});
    }
  }
  if (!corpus.empty() && static_cast<double>(out.failures.size()) >
                             kMaxDistillFailureRate * static_cast<double>(corpus.size())) {
    throw DataError("distillation failed for " + std::to_string(out.failures.size()) + " of " +
                    std::to_string(corpus.size()) + " utterances; first: " +
                    out.failures.front().utterance_id + ": " + out.failures.front().reason);
  }

  out.header["format"] = kFormat;
  out.header["version"] = kVersion;
  out.header["isr_config"] = cfg;
  out.header["teacher_sha256"] = out.teacher_hash;
  out.header["utterances"] = out.examples.size();
  out.header["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : out.failures) {
    out.header["failures"].push_back({{"id", f.utterance_id}, {"reason", f.reason}});
  }
  return out;
}

void SaveStudentDataset(const StudentDataset& data, const fs::path& path,
                        const std::map<std::string, std::string>& feature_paths) {
  std::ostringstream os;
  nlohmann::ordered_json head;
  head["header"] = data.header;
  os << head.dump() << '\n';
  for (const auto& ex : data.examples) {
    const SegmentedExample& seg = ex.segments;
    nlohmann::ordered_json rec;
    rec["id"] = seg.utterance_id;
    auto it = feature_paths.find(seg.utterance_id);
    rec["feature_path"] = it == feature_paths.end() ? nlohmann::ordered_json(nullptr)
                                                    : nlohmann::ordered_json(it->second);
    rec["total_blocks"] = seg.total_blocks;
    rec["alignment"] = ex.alignment.assignment;
    rec["alignment_score"] = ex.alignment.score;
    rec["max_row_sum_error"] = ex.max_row_sum_error;
    rec["steps"] = nlohmann::ordered_json::array();
    for (const auto& step : seg.steps) {
      rec["steps"].push_back({{"frame_begin", step.frame_begin},
                              {"frame_end", step.frame_end},
                              {"block_begin", step.block_begin},
                              {"block_end", step.block_end},
                              {"targets", step.targets}});
    }
    os << rec.dump() << '\n';
  }
  WriteFileBytes(path, os.str());
}

StudentDataset LoadStudentDataset(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw IntegrityError("cannot open student dataset " + path.string());
  StudentDataset out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      auto rec = nlohmann::ordered_json::parse(line);
      if (rec.contains("header")) {
        out.header = rec["header"];
        if (out.header.value("format", std::string()) != kFormat ||
            out.header.value("version", 0) != kVersion) {
          throw IntegrityError(where + ": not a version " + std::to_string(kVersion) +
                               " student dataset");
        }
        out.config = out.header.at("isr_config").get<IsrConfig>();
        out.teacher_hash = out.header.value("teacher_sha256", std::string());
        for (const auto& f : out.header.value("failures", nlohmann::ordered_json::array())) {
          out.failures.push_back({f.at("id").get<std::string>(), f.at("reason").get<std::string>()});
        }
        have_header = true;
        continue;
      }
      if (!have_header) throw IntegrityError(where + ": record before header");
      StudentExample ex;
      ex.segments.utterance_id = rec.at("id").get<std::string>();
      ex.segments.config = out.config;
      ex.segments.total_blocks = rec.at("total_blocks").get<std::size_t>();
      ex.alignment.assignment = rec.at("alignment").get<std::vector<std::size_t>>();
      ex.alignment.score = rec.at("alignment_score").get<double>();
      ex.max_row_sum_error = rec.value("max_row_sum_error", 0.0);
      for (const auto& s : rec.at("steps")) {
        SegmentStep step;
        step.frame_begin = s.at("frame_begin").get<std::int64_t>();
        step.frame_end = s.at("frame_end").get<std::int64_t>();
        step.block_begin = s.at("block_begin").get<std::size_t>();
        step.block_end = s.at("block_end").get<std::size_t>();
        step.targets = s.at("targets").get<TokenSequence>();
        ex.segments.steps.push_back(std::move(step));
      }
      out.examples.push_back(std::move(ex));
    } catch (const nlohmann::json::exception& e) {
      throw IntegrityError(where + ": " + e.what());
    }
  }
  if (!have_header) throw IntegrityError(path.string() + ": missing header record");
  return out;
}

}  // namespace atisr
