#include "asdk/sampling.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace asdk {

namespace {

constexpr double kTailSplit = 0.02425;

// Acklam's rational approximation to Phi^{-1}; max abs error ~1.15e-9
// before polishing.
double inverse_normal_cdf_approx(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  if (p < kTailSplit) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kTailSplit) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double inverse_normal_cdf(double u) {
  const double p = std::min(1.0 - 1e-12, std::max(1e-12, u));
  double x = inverse_normal_cdf_approx(p);
  // One Newton step against the erfc-based CDF.
  const double err = normal_cdf(x) - p;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  if (pdf > 0.0) x -= err / pdf;
  return x;
}

double log_density_standard_normal(const Vector& x) {
  static const double log_sqrt_2pi = 0.5 * std::log(2.0 * M_PI);
  return -0.5 * x.squaredNorm() - log_sqrt_2pi * static_cast<double>(x.size());
}

SobolTable::SobolTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open Sobol direction-number table: " + path);
  std::string line;
  int expected_dim = 2;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
    std::istringstream row(line);
    int dim = 0, s = 0;
    std::uint32_t a = 0;
    row >> dim >> s >> a;
    if (!row || dim != expected_dim || s < 1 || s > 30)
      throw InvalidArgument("malformed Sobol table row: " + line);
    std::vector<std::uint32_t> m(s);
    for (int k = 0; k < s; ++k) {
      row >> m[k];
      if (!row || m[k] % 2 == 0 || m[k] >= (1u << (k + 1)))
        throw InvalidArgument("invalid direction number in row: " + line);
    }
    degree_.push_back(s);
    poly_.push_back(a);
    m_.push_back(std::move(m));
    ++expected_dim;
  }
  if (degree_.empty()) throw InvalidArgument("empty Sobol table: " + path);
}

const SobolTable& SobolTable::instance() {
  static SobolTable table(data_dir() + "/sobol_directions.txt");
  return table;
}

std::vector<std::uint64_t> SobolTable::directions(int dim) const {
  constexpr int kBits = 64;
  std::vector<std::uint64_t> v(kBits + 1, 0);
  if (dim == 1) {
    for (int k = 1; k <= kBits; ++k) v[k] = 1ULL << (kBits - k);
    return v;
  }
  const int idx = dim - 2;
  const int s = degree_[idx];
  const std::uint32_t a = poly_[idx];
  const auto& m = m_[idx];
  for (int k = 1; k <= std::min(s, kBits); ++k)
    v[k] = static_cast<std::uint64_t>(m[k - 1]) << (kBits - k);
  for (int k = s + 1; k <= kBits; ++k) {
    v[k] = v[k - s] ^ (v[k - s] >> s);
    for (int i = 1; i < s; ++i)
      if ((a >> (s - 1 - i)) & 1u) v[k] ^= v[k - i];
  }
  return v;
}

PointSet sobol_points(int n, int d, std::uint64_t skip) {
  if (n < 1 || d < 1) throw InvalidArgument("sobol_points: need n >= 1 and d >= 1");
  const SobolTable& table = SobolTable::instance();
  if (d > table.max_dimension())
    throw UnsupportedDimension("sobol_points: dimension " + std::to_string(d) +
                               " exceeds direction-number table limit " +
                               std::to_string(table.max_dimension()));
  Matrix pts(n, d);
  for (int j = 0; j < d; ++j) {
    const auto v = table.directions(j + 1);
    // State at index `skip` of the Gray-code ordering equals the natural
    // Sobol value at gray(skip).
    std::uint64_t state = 0;
    std::uint64_t g = skip ^ (skip >> 1);
    for (int bit = 0; g != 0; ++bit, g >>= 1)
      if (g & 1ULL) state ^= v[bit + 1];
    std::uint64_t index = skip;
    for (int i = 0; i < n; ++i) {
      pts(i, j) = static_cast<double>(state) * 0x1p-64;
      state ^= v[std::countr_one(index) + 1];
      ++index;
    }
  }
  return {pts, SampleSpace::unit_cube};
}

PointSet lhs_points(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw InvalidArgument("lhs_points: need n >= 1 and d >= 1");
  Matrix pts(n, d);
  Rng rng(seed, /*stream=*/0x1b5);
  std::vector<int> perm(n);
  for (int j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_index(static_cast<std::size_t>(i) + 1)]);
    for (int i = 0; i < n; ++i)
      pts(i, j) = (static_cast<double>(perm[i]) + rng.next_uniform()) / static_cast<double>(n);
  }
  return {pts, SampleSpace::unit_cube};
}

PointSet to_standard_normal(const PointSet& p) {
  if (p.space != SampleSpace::unit_cube)
    throw InvalidArgument("to_standard_normal: input must be unit-cube points");
  Matrix out(p.points.rows(), p.points.cols());
  for (Eigen::Index i = 0; i < p.points.rows(); ++i)
    for (Eigen::Index j = 0; j < p.points.cols(); ++j)
      out(i, j) = inverse_normal_cdf(p.points(i, j));
  return {out, SampleSpace::standard_normal};
}

}  // namespace asdk
