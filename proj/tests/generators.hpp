#pragma once

// Seeded generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "limop/limop.hpp"

namespace limop::testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  TruncatedVector vec(std::size_t n, SpaceTag tag, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& c : v) c = uniform(-scale, scale);
    return TruncatedVector(std::move(v), tag);
  }

  /// Coordinates on the lattice k/64 in [-1, 1].
  TruncatedVector dyadic(std::size_t n, SpaceTag tag) {
    std::vector<double> v(n);
    for (auto& c : v) c = std::uniform_int_distribution<int>(-64, 64)(rng_) / 64.0;
    return TruncatedVector(std::move(v), tag);
  }

  /// Point of K = hull{e_0..e_{N-1}, 0} via random convex weights.
  TruncatedVector simplex_point(std::size_t n, SpaceTag tag = SpaceTag::l1_dual()) {
    std::vector<double> w(n + 1);
    double s = 0.0;
    for (auto& x : w) s += (x = -std::log(uniform(1e-12, 1.0)));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / s;
    return TruncatedVector(std::move(v), tag);
  }

  LinearOp op(std::size_t n, SpaceTag tag = SpaceTag::c0()) {
    switch (index(3)) {
      case 0: return LinearOp::identity(n, tag);
      case 1: {
        std::vector<double> d(n);
        for (auto& c : d) c = uniform(-2.0, 2.0);
        return LinearOp::diagonal(std::move(d), tag, tag);
      }
      default: {
        const std::size_t rows = n;
        std::vector<double> data(rows * n);
        for (auto& c : data) c = uniform(-1.0, 1.0);
        return LinearOp::dense(rows, n, std::move(data), tag, tag);
      }
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace limop::testgen
