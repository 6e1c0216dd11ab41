#pragma once

#include <cstdint>
#include <vector>

#include "asdk/common.hpp"

namespace asdk {

enum class Activation { relu, tanh };

struct MlpSpec {
  std::vector<int> layer_sizes;  // input dim first, feature dim last
  Activation activation = Activation::relu;

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int n_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
  void validate() const;

  // Architectures used by default for the deep kernel: in->200->100->10 below
  // 128 inputs, in->1000->500->200->20 above.
  static MlpSpec default_for(int input_dim, int threshold = 128);
};

struct MlpWeights {
  std::vector<Matrix> W;  // W[l]: layer_sizes[l+1] x layer_sizes[l]
  std::vector<Vector> b;

  int n_params() const;
  Vector flatten() const;
  static MlpWeights unflatten(const MlpSpec& spec, const Vector& theta);
  static MlpWeights zeros_like(const MlpSpec& spec);
};

// Uniform +-sqrt(6/(fan_in+fan_out)) initialization.
MlpWeights mlp_init(const MlpSpec& spec, std::uint64_t seed);

Vector mlp_forward(const MlpSpec& spec, const MlpWeights& w, const Vector& x);

// Rows are points.
Matrix mlp_forward_batch(const MlpSpec& spec, const MlpWeights& w, const Matrix& X);

// J(i,j) = d phi_i / d x_j, with the subgradient convention relu'(0) = 0.
Matrix mlp_input_jacobian(const MlpSpec& spec, const MlpWeights& w, const Vector& x);

// Reverse-mode gradients of <upstream, phi(x, w)> w.r.t. every weight/bias.
MlpWeights mlp_weight_gradients(const MlpSpec& spec, const MlpWeights& w, const Vector& x,
                                const Vector& upstream);

// Sum of mlp_weight_gradients over rows of X with per-row upstream rows.
MlpWeights mlp_weight_gradients_batch(const MlpSpec& spec, const MlpWeights& w, const Matrix& X,
                                      const Matrix& upstream);

}  // namespace asdk
