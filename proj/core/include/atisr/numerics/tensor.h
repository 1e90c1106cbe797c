// atisr/numerics/tensor.h

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

#ifndef ATISR_NUMERICS_TENSOR_H_
#define ATISR_NUMERICS_TENSOR_H_

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace atisr {

using Shape = std::vector<std::size_t>;

std::size_t ShapeSize(const Shape& shape);
std::string ShapeString(const Shape& shape);

struct TensorNode {
  Shape shape;
  std::vector<double> data;
  bool requires_grad = false;
  // True when the node was produced by an operation recorded on a tape.
  // Recorded nodes keep their adjoint in `grad`; leaves keep it on the tape.
  bool recorded = false;
  std::vector<double> grad;
  std::string name;
};

/// Dense row-major tensor of doubles.
///
/// A Tensor is a cheap handle: copies share the underlying node, the way the
/// same parameter is referenced by several consumers in a graph. Use Clone()
/// for an independent copy. Rank 0 and rank 1 tensors are viewed as a single
/// row wherever an operation needs a matrix.
class Tensor {
 public:
  Tensor() = default;

  static Tensor Zeros(const Shape& shape);
  static Tensor Full(const Shape& shape, double value);
  static Tensor FromData(const Shape& shape, std::vector<double> data);
  static Tensor Scalar(double value);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->data.size(); }
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> data() const { return node_->data; }
  std::span<double> mutable_data() { return node_->data; }
  double item() const;
  double at(std::size_t r, std::size_t c) const {
    return node_->data[r * cols() + c];
  }

  bool requires_grad() const { return node_->requires_grad; }
  Tensor& set_requires_grad(bool value);
  const std::string& name() const { return node_->name; }
  Tensor& set_name(std::string name);

  /// Deep copy that is detached from any tape.
  Tensor Clone() const;
  /// Throws DimensionError if any element is NaN or infinite.
  void CheckFinite(const char* context) const;

  TensorNode* node() const { return node_.get(); }
  const std::shared_ptr<TensorNode>& shared_node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<TensorNode> node) : node_(std::move(node)) {}
  std::shared_ptr<TensorNode> node_;
};

/// Adjoints of the leaf tensors reached by a backward pass.
class Gradients {
 public:
  /// Gradient of `t`; all zeros if the loss does not depend on it.
  std::vector<double> Of(const Tensor& t) const;
  bool Contains(const Tensor& t) const;
  std::size_t size() const { return grads_.size(); }

 private:
  friend class GradTape;
  std::unordered_map<const TensorNode*, std::vector<double>> grads_;
};

/// Ordered record of primitive operations.
///
/// Entries are appended in creation order, which is a topological order, so a
/// reverse sweep visits every node after all of its consumers. A tape and the
/// tensors it records are confined to one thread; parameters (leaves) are
/// only read, so several tapes may share one set of parameters.
class GradTape {
 public:
  /// Receives the adjoint of the op's output; must add into parent buffers
  /// obtained through GradOf().
  using BackwardFn = std::function<void(GradTape&, std::span<const double>)>;

  GradTape() = default;
  GradTape(const GradTape&) = delete;
  GradTape& operator=(const GradTape&) = delete;

  /// Reverse-mode sweep from a scalar loss recorded on this tape. Can be
  /// replayed; every call starts from zeroed adjoints.
  Gradients Backward(const Tensor& loss);

  /// Adjoint buffer of `t`, zero-initialized on first access.
  std::span<double> GradOf(const Tensor& t);

  std::size_t size() const { return entries_.size(); }
  void Clear();

  /// Tape that ops record on for the current thread, or nullptr.
  static GradTape* Active();

  // Used by op implementations.
  void Record(const Tensor& out, BackwardFn fn);

 private:
  friend class TapeScope;
  struct Entry {
    std::shared_ptr<TensorNode> out;
    BackwardFn backward;
  };
  std::vector<Entry> entries_;
  std::unordered_map<const TensorNode*, std::vector<double>> leaf_grads_;
};

/// Makes `tape` the active tape of the calling thread for its lifetime.
class TapeScope {
 public:
  explicit TapeScope(GradTape& tape);
  ~TapeScope();
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  GradTape* previous_;
};

/// True when an op over `inputs` must be recorded.
bool ShouldRecord(std::initializer_list<const Tensor*> inputs);

}  // namespace atisr

#endif  // ATISR_NUMERICS_TENSOR_H_
