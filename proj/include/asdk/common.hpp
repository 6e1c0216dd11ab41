#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace asdk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Invalid user input (bad shapes, out-of-range arguments, malformed files).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure that survived all recovery attempts (e.g. a covariance
// matrix that stays indefinite after the full jitter ladder).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Override the directory holding the Sobol direction-number table. Defaults
// to the build-time data directory, or $ASDK_DATA_DIR when set.
void set_data_dir(const std::string& path);
std::string data_dir();

// Counter-based generator (splitmix64). Streams are identified by (seed,
// stream) pairs so every consumer of randomness in a run can own a named,
// independent stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0,1): 53-bit mantissa, zero excluded.
  double next_uniform() {
    const std::uint64_t u = next_u64() >> 11;
    return (static_cast<double>(u) + 0.5) * 0x1p-53;
  }

  // Standard normal via the inverse CDF, so all Gaussian draws in the
  // project share one transform.
  double next_normal();

  // Index in [0, n).
  std::size_t next_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

 private:
  std::uint64_t state_;
};

// Deterministic block-parallel loop: the index range is cut into fixed-size
// blocks independent of the worker count, so results never depend on how
// many threads execute. `fn` receives [begin, end) block bounds.
void parallel_for_blocks(std::size_t n, std::size_t block,
                         const std::function<void(std::size_t, std::size_t)>& fn);

// Number of worker threads parallel_for_blocks may use (0 = hardware).
void set_num_threads(int n);
int num_threads();

}  // namespace asdk
