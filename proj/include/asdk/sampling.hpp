#pragma once

#include <cstdint>
#include <vector>

#include "asdk/common.hpp"

namespace asdk {

enum class SampleSpace { unit_cube, standard_normal };

struct PointSet {
  Matrix points;  // n rows, d columns
  SampleSpace space = SampleSpace::unit_cube;

  int n() const { return static_cast<int>(points.rows()); }
  int d() const { return static_cast<int>(points.cols()); }
};

// Direction numbers for the Sobol sequence, loaded from the plain-text table
// in the data directory (see data/sobol_directions.txt for the column
// format). Dimension 1 is built in; the table provides dimensions 2..max.
class SobolTable {
 public:
  static const SobolTable& instance();
  explicit SobolTable(const std::string& path);

  int max_dimension() const { return static_cast<int>(degree_.size()) + 1; }
  // 64 direction integers (v_k scaled by 2^(63-k)) for 1-based dimension.
  std::vector<std::uint64_t> directions(int dim) const;

 private:
  std::vector<int> degree_;                     // s, per dimension >= 2
  std::vector<std::uint32_t> poly_;             // a, per dimension >= 2
  std::vector<std::vector<std::uint32_t>> m_;   // m_1..m_s, per dimension >= 2
};

// First n points of the Sobol sequence (Antonov-Saleev Gray-code order) after
// skipping `skip`. Deterministic for fixed arguments; index 0 is the origin.
PointSet sobol_points(int n, int d, std::uint64_t skip = 0);

// Latin hypercube sample: each coordinate has exactly one point per stratum.
PointSet lhs_points(int n, int d, std::uint64_t seed);

// Elementwise inverse standard-normal CDF; inputs clamped to
// [1e-12, 1 - 1e-12] first.
PointSet to_standard_normal(const PointSet& p);

// Phi^{-1}(u); rational approximation polished with one Newton step against
// the erfc-based CDF (abs error < 1e-9 over the clamped domain).
double inverse_normal_cdf(double u);

// Phi(z) via erfc.
double normal_cdf(double z);

// log p(x) for the independent standard-normal variation model.
double log_density_standard_normal(const Vector& x);

}  // namespace asdk
