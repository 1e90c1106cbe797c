// tests/support/fixtures.h

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


// Small corpora and models shared by the unit tests.

#ifndef ATISR_TESTS_SUPPORT_FIXTURES_H_
#define ATISR_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>

#include "atisr/corpus/synthetic.h"
#include "atisr/pipeline/experiment.h"
#include "atisr/seq2seq/model.h"
#include "atisr/seq2seq/teacher.h"

namespace atisr::testing {

inline ArchConfig TinyArch(std::size_t feature_dim = 6) {
  ArchConfig a;
  a.feature_dim = feature_dim;
  a.projection_dim = 8;
  a.encoder_hidden = 8;
  a.embedding_dim = 8;
  a.decoder_hidden = 16;
  a.attention_hidden = 8;
  return a;
}

/// Short utterances over a 5-letter alphabet.
inline SyntheticCorpus TinyCorpus(std::size_t train, std::size_t dev = 1, std::size_t test = 1,
                                  std::uint64_t seed = 3) {
  SyntheticSpec spec;
  spec.alphabet_size = 5;
  spec.min_chars = 4;
  spec.max_chars = 6;
  spec.feature_dim = 6;
  spec.noise = 0.1;
  spec.train_size = train;
  spec.dev_size = dev;
  spec.test_size = test;
  spec.seed = seed;
  return GenerateSynthetic(spec);
}

/// A teacher overfit on a single utterance (cached across test cases).
struct Memorized {
  SyntheticCorpus corpus;
  TeacherRun run;
};

inline const Memorized& MemorizedTeacher() {
  static const Memorized m = [] {
    Memorized out{TinyCorpus(1), {}};
    TrainHyper h;
    h.epochs = 500;
    h.batch_size = 1;
    h.adam.lr = 0.01;
    h.max_steps = 500;
    h.seed = 4;
    out.run = TrainTeacher(out.corpus.train, out.corpus.train, out.corpus.vocabulary, TinyArch(), h);
    return out;
  }();
  return m;
}

/// A pipeline configuration small enough to run end to end in seconds.
inline ExperimentConfig SmokeConfig(std::uint64_t seed = 5) {
  ExperimentConfig c;
  c.seed = seed;
  c.synthetic = SyntheticSpec{};
  c.synthetic.alphabet_size = 5;
  c.synthetic.min_chars = 4;
  c.synthetic.max_chars = 6;
  c.synthetic.feature_dim = 6;
  c.synthetic.noise = 0.1;
  c.synthetic.train_size = 6;
  c.synthetic.dev_size = 2;
  c.synthetic.test_size = 3;
  c.arch = TinyArch();
  c.teacher.epochs = 3;
  c.teacher.batch_size = 2;
  c.teacher.adam.lr = 0.01;
  c.student = c.teacher;
  return ExperimentConfig::FromJson(c.ToJson());
}

}  // namespace atisr::testing

#endif  // ATISR_TESTS_SUPPORT_FIXTURES_H_
