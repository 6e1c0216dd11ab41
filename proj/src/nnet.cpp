#include "asdk/nnet.hpp"

#include <cmath>

namespace asdk {

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2) throw InvalidArgument("MlpSpec: need at least two layer sizes");
  for (int s : layer_sizes)
    if (s < 1) throw InvalidArgument("MlpSpec: layer sizes must be positive");
}

MlpSpec MlpSpec::default_for(int input_dim, int threshold) {
  MlpSpec spec;
  if (input_dim < threshold)
    spec.layer_sizes = {input_dim, 200, 100, 10};
  else
    spec.layer_sizes = {input_dim, 1000, 500, 200, 20};
  spec.activation = Activation::relu;
  return spec;
}

int MlpWeights::n_params() const {
  int n = 0;
  for (std::size_t l = 0; l < W.size(); ++l)
    n += static_cast<int>(W[l].size() + b[l].size());
  return n;
}

Vector MlpWeights::flatten() const {
  Vector theta(n_params());
  int at = 0;
  for (std::size_t l = 0; l < W.size(); ++l) {
    const int nw = static_cast<int>(W[l].size());
    theta.segment(at, nw) = Eigen::Map<const Vector>(W[l].data(), nw);
    at += nw;
    theta.segment(at, b[l].size()) = b[l];
    at += static_cast<int>(b[l].size());
  }
  return theta;
}

MlpWeights MlpWeights::unflatten(const MlpSpec& spec, const Vector& theta) {
  MlpWeights w = zeros_like(spec);
  int at = 0;
  for (std::size_t l = 0; l < w.W.size(); ++l) {
    const int nw = static_cast<int>(w.W[l].size());
    Eigen::Map<Vector>(w.W[l].data(), nw) = theta.segment(at, nw);
    at += nw;
    w.b[l] = theta.segment(at, w.b[l].size());
    at += static_cast<int>(w.b[l].size());
  }
  return w;
}

MlpWeights MlpWeights::zeros_like(const MlpSpec& spec) {
  MlpWeights w;
  for (int l = 0; l + 1 < static_cast<int>(spec.layer_sizes.size()); ++l) {
    w.W.push_back(Matrix::Zero(spec.layer_sizes[l + 1], spec.layer_sizes[l]));
    w.b.push_back(Vector::Zero(spec.layer_sizes[l + 1]));
  }
  return w;
}

MlpWeights mlp_init(const MlpSpec& spec, std::uint64_t seed) {
  spec.validate();
  MlpWeights w = MlpWeights::zeros_like(spec);
  Rng rng(seed, /*stream=*/0x31e7);
  for (std::size_t l = 0; l < w.W.size(); ++l) {
    const double fan_in = static_cast<double>(w.W[l].cols());
    const double fan_out = static_cast<double>(w.W[l].rows());
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (Eigen::Index i = 0; i < w.W[l].rows(); ++i)
      for (Eigen::Index j = 0; j < w.W[l].cols(); ++j)
        w.W[l](i, j) = bound * (2.0 * rng.next_uniform() - 1.0);
  }
  return w;
}

namespace {

void check_shapes(const MlpSpec& spec, const MlpWeights& w, Eigen::Index x_dim) {
  spec.validate();
  if (w.W.size() != static_cast<std::size_t>(spec.n_layers()))
    throw InvalidArgument("mlp: weight count does not match spec");
  if (x_dim != spec.input_dim()) throw InvalidArgument("mlp: input dimension mismatch");
  for (int l = 0; l < spec.n_layers(); ++l)
    if (w.W[l].rows() != spec.layer_sizes[l + 1] || w.W[l].cols() != spec.layer_sizes[l] ||
        w.b[l].size() != spec.layer_sizes[l + 1])
      throw InvalidArgument("mlp: weight shape mismatch at layer " + std::to_string(l));
}

double act(Activation a, double z) {
  return a == Activation::relu ? (z > 0.0 ? z : 0.0) : std::tanh(z);
}

// Derivative expressed through the activation value (relu'(0) = 0).
double act_deriv_from_value(Activation a, double pre, double post) {
  return a == Activation::relu ? (pre > 0.0 ? 1.0 : 0.0) : 1.0 - post * post;
}

}  // namespace

Vector mlp_forward(const MlpSpec& spec, const MlpWeights& w, const Vector& x) {
  check_shapes(spec, w, x.size());
  Vector h = x;
  for (int l = 0; l < spec.n_layers(); ++l) {
    Vector z = w.W[l] * h + w.b[l];
    if (l + 1 < spec.n_layers())
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = act(spec.activation, z(i));
    h = std::move(z);
  }
  return h;
}

Matrix mlp_forward_batch(const MlpSpec& spec, const MlpWeights& w, const Matrix& X) {
  check_shapes(spec, w, X.cols());
  Matrix H = X;
  for (int l = 0; l < spec.n_layers(); ++l) {
    Matrix Z = (H * w.W[l].transpose()).rowwise() + w.b[l].transpose();
    if (l + 1 < spec.n_layers()) {
      if (spec.activation == Activation::relu)
        Z = Z.cwiseMax(0.0);
      else
        Z = Z.array().tanh().matrix();
    }
    H = std::move(Z);
  }
  return H;
}

Matrix mlp_input_jacobian(const MlpSpec& spec, const MlpWeights& w, const Vector& x) {
  check_shapes(spec, w, x.size());
  Vector h = x;
  Matrix J = Matrix::Identity(spec.input_dim(), spec.input_dim());
  for (int l = 0; l < spec.n_layers(); ++l) {
    Vector z = w.W[l] * h + w.b[l];
    Matrix Jl = w.W[l] * J;
    if (l + 1 < spec.n_layers()) {
      Vector post(z.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        post(i) = act(spec.activation, z(i));
        Jl.row(i) *= act_deriv_from_value(spec.activation, z(i), post(i));
      }
      h = std::move(post);
    } else {
      h = std::move(z);
    }
    J = std::move(Jl);
  }
  return J;
}

MlpWeights mlp_weight_gradients(const MlpSpec& spec, const MlpWeights& w, const Vector& x,
                                const Vector& upstream) {
  check_shapes(spec, w, x.size());
  if (upstream.size() != spec.output_dim())
    throw InvalidArgument("mlp_weight_gradients: upstream length must equal the feature dim");
  const int L = spec.n_layers();
  std::vector<Vector> acts(L + 1), pre(L);
  acts[0] = x;
  for (int l = 0; l < L; ++l) {
    pre[l] = w.W[l] * acts[l] + w.b[l];
    if (l + 1 < L) {
      acts[l + 1] = pre[l];
      for (Eigen::Index i = 0; i < acts[l + 1].size(); ++i)
        acts[l + 1](i) = act(spec.activation, pre[l](i));
    } else {
      acts[l + 1] = pre[l];
    }
  }
  MlpWeights g = MlpWeights::zeros_like(spec);
  Vector delta = upstream;
  for (int l = L - 1; l >= 0; --l) {
    if (l + 1 < L)
      for (Eigen::Index i = 0; i < delta.size(); ++i)
        delta(i) *= act_deriv_from_value(spec.activation, pre[l](i), acts[l + 1](i));
    g.W[l] = delta * acts[l].transpose();
    g.b[l] = delta;
    if (l > 0) delta = w.W[l].transpose() * delta;
  }
  return g;
}

MlpWeights mlp_weight_gradients_batch(const MlpSpec& spec, const MlpWeights& w, const Matrix& X,
                                      const Matrix& upstream) {
  check_shapes(spec, w, X.cols());
  if (upstream.rows() != X.rows() || upstream.cols() != spec.output_dim())
    throw InvalidArgument("mlp_weight_gradients_batch: upstream shape mismatch");
  const int L = spec.n_layers();
  const Eigen::Index N = X.rows();
  // Forward with cached activations; everything batched over rows.
  std::vector<Matrix> acts(L + 1), pre(L);
  acts[0] = X;
  for (int l = 0; l < L; ++l) {
    pre[l] = (acts[l] * w.W[l].transpose()).rowwise() + w.b[l].transpose();
    if (l + 1 < L) {
      if (spec.activation == Activation::relu)
        acts[l + 1] = pre[l].cwiseMax(0.0);
      else
        acts[l + 1] = pre[l].array().tanh().matrix();
    } else {
      acts[l + 1] = pre[l];
    }
  }
  MlpWeights g = MlpWeights::zeros_like(spec);
  Matrix delta = upstream;
  (void)N;
  for (int l = L - 1; l >= 0; --l) {
    if (l + 1 < L) {
      if (spec.activation == Activation::relu)
        delta = delta.cwiseProduct((pre[l].array() > 0.0).cast<double>().matrix());
      else
        delta = delta.cwiseProduct((1.0 - acts[l + 1].array().square()).matrix());
    }
    g.W[l] = delta.transpose() * acts[l];
    g.b[l] = delta.colwise().sum().transpose();
    if (l > 0) delta = delta * w.W[l];
  }
  return g;
}

}  // namespace asdk
