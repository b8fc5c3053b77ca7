#ifndef CROSSDIFF_SAMPLING_HPP
#define CROSSDIFF_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "crossdiff/model.hpp"

namespace crossdiff {

/// Flat list of points in R^dims.
class SampleSet {
 public:
  explicit SampleSet(int dims) : dims_(dims) {}

  int dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return points_.size() / static_cast<std::size_t>(dims_); }
  std::span<const double> operator[](std::size_t k) const noexcept {
    return {points_.data() + k * dims_, static_cast<std::size_t>(dims_)};
  }
  void push(std::span<const double> p) { points_.insert(points_.end(), p.begin(), p.end()); }
  void append(const SampleSet& other) { points_.insert(points_.end(), other.points_.begin(), other.points_.end()); }

 private:
  int dims_;
  std::vector<double> points_;
};

/// Box corners, points along each coordinate axis and the main diagonal from
/// `lo`, then `n_halton` Halton points (index offset by the seed). Fully
/// deterministic.
SampleSet box_samples(const Box& box, int n_halton, std::uint64_t seed = 0);

/// Uniform double in [0,1) from the top 53 bits (portable across standard
/// libraries, unlike std::uniform_real_distribution).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal via Box-Muller on uniform01.
double standard_normal(std::mt19937_64& rng);

/// `count` unit vectors in R^dims, deterministic in the seed.
SampleSet unit_directions(int dims, int count, std::uint64_t seed);

}  // namespace crossdiff

#endif  // CROSSDIFF_SAMPLING_HPP
