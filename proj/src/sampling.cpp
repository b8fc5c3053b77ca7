#include "crossdiff/sampling.hpp"

#include <cmath>
#include <numbers>

#include "crossdiff/error.hpp"
#include "crossdiff/linalg.hpp"

namespace crossdiff {
namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
constexpr int kMaxCornerDims = 12;

double radical_inverse(std::uint64_t index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace

SampleSet box_samples(const Box& box, int n_halton, std::uint64_t seed) {
  const int d = box.dims();
  if (d < 1 || d > static_cast<int>(std::size(kPrimes)))
    throw ConfigError("sampling: box dimension must be in [1, 16]");
  SampleSet s(d);
  std::vector<double> p(d);

  if (d <= kMaxCornerDims) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      for (int i = 0; i < d; ++i) p[i] = (mask >> i) & 1u ? box.hi[i] : box.lo[i];
      s.push(p);
    }
  }
  for (double t : {0.25, 0.5, 0.75}) {
    for (int axis = 0; axis < d; ++axis) {
      for (int i = 0; i < d; ++i) p[i] = box.lo[i];
      p[axis] = box.lo[axis] + t * (box.hi[axis] - box.lo[axis]);
      s.push(p);
    }
    for (int i = 0; i < d; ++i) p[i] = box.lo[i] + t * (box.hi[i] - box.lo[i]);
    s.push(p);
  }
  const std::uint64_t start = 1 + seed * static_cast<std::uint64_t>(n_halton > 0 ? n_halton : 1);
  for (int n = 0; n < n_halton; ++n) {
    for (int i = 0; i < d; ++i)
      p[i] = box.lo[i] + radical_inverse(start + n, kPrimes[i]) * (box.hi[i] - box.lo[i]);
    s.push(p);
  }
  return s;
}

double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SampleSet unit_directions(int dims, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SampleSet s(dims);
  std::vector<double> z(dims);
  for (int n = 0; n < count; ++n) {
    double norm = 0.0;
    while (norm < 1e-12) {
      for (double& v : z) v = standard_normal(rng);
      norm = euclidean_norm(z);
    }
    for (double& v : z) v /= norm;
    s.push(z);
  }
  return s;
}

}  // namespace crossdiff
