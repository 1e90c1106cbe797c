// numerics/tensor.cc

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

#include "atisr/numerics/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "atisr/error.h"

namespace atisr {

namespace {
thread_local GradTape* g_active_tape = nullptr;
}  // namespace

std::size_t ShapeSize(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string ShapeString(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor Tensor::Zeros(const Shape& shape) { return Full(shape, 0.0); }

Tensor Tensor::Full(const Shape& shape, double value) {
  for (std::size_t d : shape) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive, got " + ShapeString(shape));
  }
  auto node = std::make_shared<TensorNode>();
  node->shape = shape;
  node->data.assign(ShapeSize(shape), value);
  return Tensor(std::move(node));
}

Tensor Tensor::FromData(const Shape& shape, std::vector<double> data) {
  for (std::size_t d : shape) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive, got " + ShapeString(shape));
  }
  if (ShapeSize(shape) != data.size()) {
    throw DimensionError("shape " + ShapeString(shape) + " does not match " +
                         std::to_string(data.size()) + " elements");
  }
  auto node = std::make_shared<TensorNode>();
  node->shape = shape;
  node->data = std::move(data);
  return Tensor(std::move(node));
}

Tensor Tensor::Scalar(double value) { return FromData({}, {value}); }

std::size_t Tensor::rows() const {
  return rank() == 2 ? node_->shape[0] : 1;
}

std::size_t Tensor::cols() const {
  switch (rank()) {
    case 0: return 1;
    case 1: return node_->shape[0];
    case 2: return node_->shape[1];
    default: return ShapeSize(node_->shape) / node_->shape[0];
  }
}

double Tensor::item() const {
  if (size() != 1) throw DimensionError("item() on tensor of shape " + ShapeString(shape()));
  return node_->data[0];
}

Tensor& Tensor::set_requires_grad(bool value) {
  node_->requires_grad = value;
  return *this;
}

Tensor& Tensor::set_name(std::string name) {
  node_->name = std::move(name);
  return *this;
}

Tensor Tensor::Clone() const {
  auto node = std::make_shared<TensorNode>();
  node->shape = node_->shape;
  node->data = node_->data;
  node->requires_grad = node_->requires_grad;
  node->name = node_->name;
  return Tensor(std::move(node));
}

void Tensor::CheckFinite(const char* context) const {
  for (double v : node_->data) {
    if (!std::isfinite(v)) {
      throw DimensionError(std::string("non-finite value in ") + context +
                           (name().empty() ? "" : " (" + name() + ")"));
    }
  }
}

std::vector<double> Gradients::Of(const Tensor& t) const {
  auto it = grads_.find(t.node());
  if (it == grads_.end()) return std::vector<double>(t.size(), 0.0);
  return it->second;
}

bool Gradients::Contains(const Tensor& t) const {
  return grads_.count(t.node()) != 0;
}

GradTape* GradTape::Active() { return g_active_tape; }

void GradTape::Record(const Tensor& out, BackwardFn fn) {
  TensorNode* node = out.node();
  node->requires_grad = true;
  node->recorded = true;
  entries_.push_back(Entry{out.shared_node(), std::move(fn)});
}

std::span<double> GradTape::GradOf(const Tensor& t) {
  TensorNode* node = t.node();
  std::vector<double>* buffer =
      node->recorded ? &node->grad : &leaf_grads_[node];
  if (buffer->size() != node->data.size()) buffer->assign(node->data.size(), 0.0);
  return *buffer;
}

Gradients GradTape::Backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw UsageError("backward() needs a scalar loss, got shape " +
                     (loss.defined() ? ShapeString(loss.shape()) : std::string("<undefined>")));
  }
  if (!loss.node()->recorded) {
    throw UsageError("backward() loss was not produced under an active tape");
  }
  auto seed_it = std::find_if(entries_.begin(), entries_.end(),
                              [&](const Entry& e) { return e.out.get() == loss.node(); });
  if (seed_it == entries_.end()) {
    throw UsageError("backward() loss was recorded on a different tape");
  }
  for (Entry& e : entries_) e.out->grad.clear();
  leaf_grads_.clear();
  loss.node()->grad.assign(1, 1.0);

  auto last = std::make_reverse_iterator(seed_it + 1);
  for (auto it = last; it != entries_.rend(); ++it) {
    if (it->out->grad.empty()) continue;  // not on a path to the loss
    it->backward(*this, it->out->grad);
  }
  Gradients result;
  for (auto& [node, grad] : leaf_grads_) {
    if (node->requires_grad) result.grads_.emplace(node, grad);
  }
  return result;
}

void GradTape::Clear() {
  entries_.clear();
  leaf_grads_.clear();
}

TapeScope::TapeScope(GradTape& tape) : previous_(g_active_tape) {
  g_active_tape = &tape;
}

TapeScope::~TapeScope() { g_active_tape = previous_; }

bool ShouldRecord(std::initializer_list<const Tensor*> inputs) {
  if (g_active_tape == nullptr) return false;
  for (const Tensor* t : inputs) {
    if (t->defined() && t->requires_grad()) return true;
  }
  return false;
}

}  // namespace atisr
