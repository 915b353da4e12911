#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "limop/errors.hpp"
#include "limop/spaces.hpp"

namespace limop {

namespace detail {

// Solves A z = b in place (Gaussian elimination, partial pivoting).
// Returns false when A is numerically singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
    b[i] = s / a[i * n + i];
  }
  return true;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct MinNormResult {
  std::vector<double> point;
  std::vector<double> weights;  // convex weights over the input points
};

// Wolfe's minimum-norm-point algorithm over conv(points).
inline MinNormResult min_norm_point(const std::vector<std::vector<double>>& pts) {
  const std::size_t m = pts.size();
  const std::size_t dim = pts.front().size();
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, dot(p, p));
  const double eps = 1e-12 * std::max(scale, 1e-300);

  std::size_t first = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (dot(pts[i], pts[i]) < dot(pts[first], pts[first])) first = i;

  std::vector<std::size_t> active{first};
  std::vector<double> lambda{1.0};
  std::vector<double> x = pts[first];

  auto combine = [&](const std::vector<double>& w) {
    std::vector<double> out(dim, 0.0);
    for (std::size_t k = 0; k < active.size(); ++k)
      for (std::size_t d = 0; d < dim; ++d) out[d] += w[k] * pts[active[k]][d];
    return out;
  };

  for (std::size_t major = 0; major < 10 * m + 50; ++major) {
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = dot(x, pts[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (dot(x, x) - best <= eps) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (std::size_t minor = 0; minor < 10 * m + 50; ++minor) {
      // affine minimizer: [G 1; 1^T 0][alpha; mu] = [0; 1]
      const std::size_t k = active.size();
      const std::size_t n = k + 1;
      std::vector<double> a(n * n, 0.0), rhs(n, 0.0);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r * n + c] = dot(pts[active[r]], pts[active[c]]);
        a[r * n + k] = 1.0;
        a[k * n + r] = 1.0;
      }
      rhs[k] = 1.0;
      if (!solve_dense(a, rhs, n)) {
        // affinely dependent: drop the newest point and stop refining
        active.pop_back();
        lambda.pop_back();
        x = combine(lambda);
        return {x, [&] {
                  std::vector<double> w(m, 0.0);
                  for (std::size_t q = 0; q < active.size(); ++q) w[active[q]] = lambda[q];
                  return w;
                }()};
      }
      std::vector<double> alpha(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(k));
      if (std::all_of(alpha.begin(), alpha.end(), [](double v) { return v > 1e-15; })) {
        lambda = alpha;
        x = combine(lambda);
        break;
      }
      double theta = 1.0;
      for (std::size_t q = 0; q < k; ++q)
        if (alpha[q] <= 1e-15 && lambda[q] - alpha[q] > 0.0)
          theta = std::min(theta, lambda[q] / (lambda[q] - alpha[q]));
      for (std::size_t q = 0; q < k; ++q) lambda[q] = theta * alpha[q] + (1.0 - theta) * lambda[q];
      std::vector<std::size_t> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t q = 0; q < k; ++q)
        if (lambda[q] > 1e-15) {
          keep_idx.push_back(active[q]);
          keep_w.push_back(lambda[q]);
        }
      active = std::move(keep_idx);
      lambda = std::move(keep_w);
      const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
      for (double& w : lambda) w /= total;
      x = combine(lambda);
    }
  }
  std::vector<double> w(m, 0.0);
  for (std::size_t q = 0; q < active.size(); ++q) w[active[q]] = lambda[q];
  return {x, w};
}

}  // namespace detail

/// Compact convex set in a dual space: convex hull of finitely many dual
/// vectors, optionally together with the origin.
class PolytopeDomain {
 public:
  PolytopeDomain(std::vector<TruncatedVector> vertices, bool include_origin)
      : vertices_(std::move(vertices)), include_origin_(include_origin) {
    if (vertices_.empty() && !include_origin_)
      throw DimensionError("polytope needs at least one generating point");
    if (vertices_.empty())
      throw DimensionError("polytope needs a vertex to fix its dimension; use origin_only()");
    dim_ = vertices_.front().size();
    tag_ = vertices_.front().tag();
    if (tag_.side != Side::dual) throw UnsupportedTag("polytope vertices must be dual vectors");
    for (const auto& v : vertices_) {
      require_same_space(v, vertices_.front());
      max_dual_norm_ = std::max(max_dual_norm_, dual_norm(v));
    }
  }

  /// The degenerate domain {0}.
  static PolytopeDomain origin_only(std::size_t n, SpaceTag tag = SpaceTag::l1_dual()) {
    return PolytopeDomain(std::vector<TruncatedVector>{TruncatedVector::zeros(n, tag)}, true);
  }

  const std::vector<TruncatedVector>& vertices() const { return vertices_; }
  bool include_origin() const { return include_origin_; }
  std::size_t dim() const { return dim_; }
  const SpaceTag& tag() const { return tag_; }
  double max_dual_norm() const { return max_dual_norm_; }

  /// Generating points: the vertices, followed by the origin when included.
  std::vector<TruncatedVector> generators() const {
    std::vector<TruncatedVector> out = vertices_;
    if (include_origin_) out.push_back(TruncatedVector::zeros(dim_, tag_));
    return out;
  }

  TruncatedVector combine(const std::vector<double>& weights) const {
    const auto gens = generators();
    if (weights.size() != gens.size()) throw DimensionError("weight count does not match generators");
    std::vector<double> out(dim_, 0.0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t d = 0; d < dim_; ++d) out[d] += weights[i] * gens[i][d];
    return TruncatedVector(std::move(out), tag_);
  }

  /// Euclidean distance from p to the polytope.
  double distance_to(const TruncatedVector& p) const {
    require_same_space(p, vertices_.front());
    std::vector<std::vector<double>> shifted;
    for (const auto& g : generators()) {
      std::vector<double> s(dim_);
      for (std::size_t d = 0; d < dim_; ++d) s[d] = g[d] - p[d];
      shifted.push_back(std::move(s));
    }
    const auto res = detail::min_norm_point(shifted);
    return std::sqrt(detail::dot(res.point, res.point));
  }

  bool contains(const TruncatedVector& p, double tol = 1e-9) const { return distance_to(p) <= tol; }

 private:
  std::vector<TruncatedVector> vertices_;
  bool include_origin_ = false;
  std::size_t dim_ = 0;
  SpaceTag tag_{};
  double max_dual_norm_ = 0.0;
};

}  // namespace limop
