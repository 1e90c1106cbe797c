// atisr/error.h

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

#ifndef ATISR_ERROR_H_
#define ATISR_ERROR_H_

#include <stdexcept>
#include <string>

namespace atisr {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible tensor shapes or an empty operand.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// API misuse, e.g. a non-scalar backward seed or an empty training set.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent hyperparameters or a model/config mismatch.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Malformed content: unknown token ids, out-of-vocabulary targets, bad lengths.
class DataError : public Error {
 public:
  using Error::Error;
};

/// On-disk artifact does not match what its manifest declares.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite gradients reached the optimizer.
class OptimizerError : public Error {
 public:
  using Error::Error;
};

/// Training diverged (non-finite loss).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// A synthetic task specification cannot be satisfied.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined for the given arguments.
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace atisr

#endif  // ATISR_ERROR_H_
