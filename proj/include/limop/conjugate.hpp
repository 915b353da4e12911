#pragma once

// Fenchel conjugation over polytope domains and brute-force grid conjugates.
//
// conjugate_over_polytope evaluates (g + delta_K)^*(x) = max_{p in K} <p,x> - g(p).
// Two routes:
//   * exact: g = sqrt(sum w_k (p_k - c_k)^2) and K = c + hull{e_0..e_{N-1}, 0}.
//     The value is the smallest c >= 0 with sum_k (x_k - c)_+^2 / w_k <= 1
//     (minimax over the dual ball of the weighted norm); the maximiser is
//     p_k proportional to (x_k - c)_+ / w_k.
//   * general: pairwise Frank-Wolfe on the convex weights of K's generators,
//     exact line search, certified by the Frank-Wolfe gap. When a step stalls
//     (a kink of g, or rounding) every pairwise move and a seeded set of random
//     feasible directions are line searched; if none ascends the point is
//     accepted as directionally stationary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <string>
#include <vector>

#include "limop/convex_fn.hpp"
#include "limop/errors.hpp"
#include "limop/polytope.hpp"
#include "limop/spaces.hpp"

namespace limop {

struct SolverBudget {
  int max_iters = 2000;
  double tol = 1e-8;
  int oracle_grid_points = 41;

  void validate() const {
    if (max_iters < 1) throw SetupError("solver budget needs max_iters >= 1");
    if (!(tol > 0.0)) throw SetupError("solver budget needs tol > 0");
    if (oracle_grid_points < 1 || oracle_grid_points % 2 == 0)
      throw SetupError("oracle grid point count must be odd");
  }
};

struct ConjugateResult {
  double value = 0.0;
  TruncatedVector argmax;
  double gap = 0.0;  // Frank-Wolfe gap estimate at termination (0 for the exact route)
  bool certified = false;
  int iterations = 0;
  bool exact = false;
};

/// Solver ran out of iterations before certifying the gap; carries the best
/// feasible point found.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(ConjugateResult best)
      : Error("conjugate solver budget exceeded (gap " + std::to_string(best.gap) + ")"),
        best_(std::move(best)) {}
  const ConjugateResult& best() const { return best_; }

 private:
  ConjugateResult best_;
};

namespace detail {

// Center c when K's generators are exactly {c} U {c + e_k : k < N}.
inline std::optional<std::vector<double>> basis_simplex_center(const PolytopeDomain& k) {
  const std::size_t n = k.dim();
  const auto gens = k.generators();
  if (gens.size() != n + 1) return std::nullopt;
  for (std::size_t ci = 0; ci < gens.size(); ++ci) {
    const auto& c = gens[ci];
    std::vector<bool> seen(n, false);
    bool ok = true;
    for (std::size_t gi = 0; gi < gens.size() && ok; ++gi) {
      if (gi == ci) continue;
      std::size_t hot = n;
      for (std::size_t d = 0; d < n && ok; ++d) {
        const double diff = gens[gi][d] - c[d];
        if (diff == 1.0 && hot == n) hot = d;
        else if (diff != 0.0) ok = false;
      }
      if (!ok || hot == n || seen[hot]) ok = false;
      else seen[hot] = true;
    }
    if (ok) return c.values();
  }
  return std::nullopt;
}

inline ConjugateResult weighted_l2_over_simplex(const WeightedL2Form& form,
                                                const std::vector<double>& center,
                                                const TruncatedVector& x, SpaceTag dual_tag) {
  const std::size_t n = x.size();
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) shift += center[i] * x[i];

  // S(c) = sum (x_k - c)_+^2 / w_k is continuous and decreasing.
  auto s_at = [&](double c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = x[i] - c;
      if (r > 0.0) s += r * r / form.weights[i];
    }
    return s;
  };

  double c = 0.0;
  if (s_at(0.0) > 1.0) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    for (std::size_t m = 1; m <= order.size(); ++m) {
      double a = 0.0, b = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        a += 1.0 / form.weights[order[q]];
        b += x[order[q]] / form.weights[order[q]];
      }
      const double mean = b / a;
      double spread = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        const double r = x[order[q]] - mean;
        spread += r * r / form.weights[order[q]];
      }
      const double root = mean - std::sqrt(std::max(0.0, (1.0 - spread) / a));
      const double lower = m < order.size() ? std::max(0.0, x[order[m]]) : 0.0;
      if (root >= lower || m == order.size()) {
        c = std::max(root, 0.0);
        break;
      }
    }
  }

  std::vector<double> p(center);
  if (c > 0.0) {
    std::vector<double> u(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = x[i] - c;
      if (r > 0.0) {
        u[i] = r / form.weights[i];
        total += u[i];
      }
    }
    if (total > 0.0)
      for (std::size_t i = 0; i < n; ++i) p[i] += u[i] / total;
  }
  ConjugateResult res{shift + c, TruncatedVector(std::move(p), dual_tag), 0.0, true, 0, true};
  return res;
}

inline bool weighted_l2_matches(const WeightedL2Form& form, const std::vector<double>& center,
                                std::size_t n) {
  if (form.weights.size() != n || form.center.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(form.weights[i] > 0.0)) return false;
    if (form.center[i] != center[i]) return false;
  }
  return true;
}

// Maximises a concave scalar function on [0, hi] by golden-section search.
template <class F>
double golden_max(F&& phi, double hi, double& best_val) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 90 && b - a > 1e-16 * std::max(1.0, hi); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  double gamma = fc >= fd ? c : d;
  best_val = std::max(fc, fd);
  const double f0 = phi(0.0), fh = phi(hi);
  if (f0 >= best_val) {
    best_val = f0;
    gamma = 0.0;
  }
  if (fh >= best_val) {
    best_val = fh;
    gamma = hi;
  }
  return gamma;
}

}  // namespace detail

/// max_{p in K} <p, x> - g(p), i.e. (g + delta_K)^*(x).
inline ConjugateResult conjugate_over_polytope(const ConvexFn& g, const PolytopeDomain& k,
                                               const TruncatedVector& x,
                                               const SolverBudget& budget = {}) {
  budget.validate();
  if (x.size() != k.dim()) throw DimensionError("conjugate: point and domain dimensions differ");
  if (!is_dual_pair(k.tag(), x.tag()))
    throw DimensionError("conjugate: domain tag does not pair with the point");

  if (g.weighted_l2) {
    if (auto center = detail::basis_simplex_center(k);
        center && detail::weighted_l2_matches(*g.weighted_l2, *center, k.dim()))
      return detail::weighted_l2_over_simplex(*g.weighted_l2, *center, x, k.tag());
  }

  const auto gens = k.generators();
  const std::size_t m = gens.size();
  const std::size_t n = k.dim();

  std::vector<double> lin(m);
  for (std::size_t i = 0; i < m; ++i) lin[i] = pairing(gens[i], x);

  auto objective = [&](const TruncatedVector& p) { return pairing(p, x) - g(p); };

  // best vertex first: a feasible lower bound and the finiteness check
  ConjugateResult best{-std::numeric_limits<double>::infinity(), gens.front(), 0.0, false, 0, false};
  bool any_finite = false;
  for (const auto& v : gens) {
    const double val = objective(v);
    if (std::isfinite(val)) {
      any_finite = true;
      if (val > best.value) {
        best.value = val;
        best.argmax = v;
      }
    }
  }
  if (!any_finite) throw NonFiniteObjective("g is not finite at any generator of K");

  std::vector<double> lambda(m, 1.0 / static_cast<double>(m));
  TruncatedVector p = k.combine(lambda);
  double val = objective(p);
  if (!std::isfinite(val)) {
    lambda.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (gens[i] == best.argmax) {
        lambda[i] = 1.0;
        break;
      }
    p = best.argmax;
    val = best.value;
  }

  auto grad_phi = [&](const TruncatedVector& at) {
    std::vector<double> gr(n);
    if (g.gradient) {
      const auto gg = g.gradient(at);
      for (std::size_t d = 0; d < n; ++d) gr[d] = x[d] - gg[d];
      return gr;
    }
    const double step = 1e-6 * std::max(1.0, norm_of(at.coords(), NormKind::sup));
    std::vector<double> c = at.values();
    for (std::size_t d = 0; d < n; ++d) {
      const double orig = c[d];
      c[d] = orig + step;
      const double up = g(TruncatedVector(c, at.tag()));
      c[d] = orig - step;
      const double dn = g(TruncatedVector(c, at.tag()));
      c[d] = orig;
      gr[d] = x[d] - (up - dn) / (2.0 * step);
    }
    return gr;
  };

  auto along = [&](const TruncatedVector& from, const TruncatedVector& dir, double gamma) {
    return axpy(from, gamma, dir);
  };

  // values closer than this are indistinguishable at double precision
  auto noise = [](double v) { return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v)); };

  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ m);
  auto escape = [&](const std::vector<double>& lam,
                    double at) -> std::optional<std::pair<std::vector<double>, double>> {
    std::vector<double> best_lam;
    double best_val = at + noise(at);
    auto try_dir = [&](const std::vector<double>& dw) {
      // largest step keeping the weights nonnegative
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i)
        if (dw[i] < 0.0) hi = std::min(hi, -lam[i] / dw[i]);
      if (!(hi > 0.0) || !std::isfinite(hi)) return;
      auto at_gamma = [&](double gm) {
        std::vector<double> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = std::max(0.0, lam[i] + gm * dw[i]);
        return w;
      };
      double v = at;
      const double gm = detail::golden_max(
          [&](double t) {
            const double o = objective(k.combine(at_gamma(t)));
            return std::isfinite(o) ? o : -std::numeric_limits<double>::infinity();
          },
          hi, v);
      if (gm > 0.0 && v > best_val) {
        best_val = v;
        best_lam = at_gamma(gm);
        // round-off weights would pin later steps to zero length
        double total = 0.0;
        for (auto& w : best_lam) total += (w = w < 1e-14 ? 0.0 : w);
        for (auto& w : best_lam) w /= total;
      }
    };
    std::vector<double> dw(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j || lam[j] <= 0.0) continue;
        std::fill(dw.begin(), dw.end(), 0.0);
        dw[i] = 1.0;
        dw[j] = -1.0;
        try_dir(dw);
      }
    // gradient sampling: difference gradients at nearby points; the least-norm
    // element of their hull (in weight space) ascends across kinks that no
    // single gradient sees
    auto weight_grad = [&](const std::vector<double>& w, double step) {
      const auto at = k.combine(w);
      std::vector<double> c = at.values();
      std::vector<double> gr(n);
      for (std::size_t d = 0; d < n; ++d) {
        const double orig = c[d];
        c[d] = orig + step;
        const double up = g(TruncatedVector(c, at.tag()));
        c[d] = orig - step;
        const double dn = g(TruncatedVector(c, at.tag()));
        c[d] = orig;
        gr[d] = x[d] - (up - dn) / (2.0 * step);
      }
      std::vector<double> sw(m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t d = 0; d < n; ++d) sw[i] += gr[d] * gens[i][d];
      const double mean = std::accumulate(sw.begin(), sw.end(), 0.0) / static_cast<double>(m);
      for (auto& v : sw) v -= mean;
      return sw;
    };
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // pass 0 stays on the current face (zero weights frozen), pass 1 may
    // also raise zero weights
    for (int pass = 0; pass < 2 && best_lam.empty(); ++pass)
      for (double eps : {1e-2, 1e-4, 1e-6}) {
        if (!best_lam.empty()) break;
        std::vector<std::vector<double>> grads;
        for (std::size_t r = 0; r < 2 * m + 2; ++r) {
          std::vector<double> u(m);
          double total = 0.0;
          for (std::size_t i = 0; i < m; ++i)
            total += (u[i] = pass == 0 && lam[i] <= 0.0 ? 0.0 : -std::log(std::max(unif(rng), 1e-300)));
          std::vector<double> w(m);
          for (std::size_t i = 0; i < m; ++i) w[i] = (1.0 - eps) * lam[i] + eps * u[i] / total;
          auto sw = weight_grad(w, 1e-2 * eps);
          if (pass == 0) {
            double mean = 0.0;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < m; ++i)
              if (lam[i] > 0.0) {
                mean += sw[i];
                ++cnt;
              }
            mean /= static_cast<double>(std::max<std::size_t>(cnt, 1));
            for (std::size_t i = 0; i < m; ++i) sw[i] = lam[i] > 0.0 ? sw[i] - mean : 0.0;
          }
          grads.push_back(std::move(sw));
        }
        // least-norm point of the hull by Frank-Wolfe with exact line search
        std::vector<double> v = grads.front();
        for (int it = 0; it < 500; ++it) {
          std::size_t best_j = 0;
          double best_dot = std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < grads.size(); ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += grads[j][i] * v[i];
            if (dot < best_dot) {
              best_dot = dot;
              best_j = j;
            }
          }
          double num = 0.0, den = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            const double diff = grads[best_j][i] - v[i];
            num -= v[i] * diff;
            den += diff * diff;
          }
          if (den <= 0.0 || num <= 1e-16 * den) break;
          const double step = std::min(1.0, num / den);
          for (std::size_t i = 0; i < m; ++i) v[i] += step * (grads[best_j][i] - v[i]);
        }
        // weights at zero may only grow; rebalance the sum on the others
        std::size_t free_n = 0;
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          if (lam[i] <= 0.0 && v[i] < 0.0) v[i] = 0.0;
          if (lam[i] > 0.0) ++free_n;
          sum += v[i];
        }
        if (free_n == 0) continue;
        for (std::size_t i = 0; i < m; ++i)
          if (lam[i] > 0.0) v[i] -= sum / static_cast<double>(free_n);
        try_dir(v);
      }
    std::normal_distribution<double> gauss;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < m; ++i) free_count += lam[i] > 0.0 ? 1 : 0;
    for (std::size_t r = 0; r < 64 * m && best_lam.empty() && free_count > 0; ++r) {
      // weights at zero may only grow; the sum is rebalanced on the others
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        dw[i] = lam[i] > 0.0 ? gauss(rng) : std::abs(gauss(rng));
        sum += dw[i];
      }
      const double shift = sum / static_cast<double>(free_count);
      for (std::size_t i = 0; i < m; ++i)
        if (lam[i] > 0.0) dw[i] -= shift;
      try_dir(dw);
    }
    if (best_lam.empty()) return std::nullopt;
    return std::make_pair(best_lam, best_val);
  };

  int it = 0;
  double gap = std::numeric_limits<double>::infinity();
  bool certified = false;
  for (; it < budget.max_iters; ++it) {
    const auto gr = grad_phi(p);
    std::vector<double> s(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t d = 0; d < n; ++d) s[i] += gr[d] * gens[i][d];
    double at_p = 0.0;
    for (std::size_t d = 0; d < n; ++d) at_p += gr[d] * p[d];
    const std::size_t fw = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
    std::size_t away = m;
    for (std::size_t i = 0; i < m; ++i)
      if (lambda[i] > 0.0 && (away == m || s[i] < s[away])) away = i;
    gap = s[fw] - at_p;
    if (gap <= budget.tol) {
      // a difference gradient can hide a kink; confirm by direct search
      const auto esc = escape(lambda, val);
      if (!esc) {
        certified = true;
        break;
      }
      lambda = esc->first;
      p = k.combine(lambda);
      val = objective(p);
      continue;
    }

    // pairwise step: move weight from the away generator to the FW generator
    const TruncatedVector dir = gens[fw] - gens[away];
    const double hi = lambda[away];
    double new_val = val;
    const double gamma = detail::golden_max(
        [&](double gm) {
          const double v = objective(along(p, dir, gm));
          return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
        },
        hi, new_val);
    if (gamma <= 0.0 || new_val <= val + noise(val)) {
      // stalled at a kink or at rounding level: search every pairwise move
      // and seeded random feasible directions for an ascent step
      const auto esc = escape(lambda, val);
      if (!esc) {
        gap = 0.0;
        certified = true;
        break;
      }
      lambda = esc->first;
      p = k.combine(lambda);
      val = objective(p);
      continue;
    }
    lambda[fw] += gamma;
    lambda[away] -= gamma;
    if (lambda[away] < 1e-14) lambda[away] = 0.0;
    p = k.combine(lambda);
    val = objective(p);
  }

  ConjugateResult res{val, p, gap, certified, it, false};
  if (best.value > res.value) {
    res.value = best.value;
    res.argmax = best.argmax;
  }
  if (!certified) throw BudgetExceeded(res);
  return res;
}

namespace detail {

inline std::vector<double> axis_grid(double radius, int points) {
  if (points < 1 || points % 2 == 0) throw SetupError("grid point count must be odd");
  std::vector<double> axis(static_cast<std::size_t>(points));
  const int half = points / 2;
  for (int i = 0; i < points; ++i)
    axis[static_cast<std::size_t>(i)] = half == 0 ? 0.0 : radius * static_cast<double>(i - half) / half;
  return axis;
}

inline std::size_t grid_size(std::size_t dim, int points, std::size_t cap) {
  double total = 1.0;
  for (std::size_t i = 0; i < dim; ++i) total *= points;
  if (total > static_cast<double>(cap))
    throw GridTooLarge("grid has " + std::to_string(total) + " points, cap is " + std::to_string(cap));
  return static_cast<std::size_t>(total);
}

// Enumerates every point of axis^dim into a flat row-major array.
inline std::vector<double> enumerate_grid(std::size_t dim, const std::vector<double>& axis,
                                          std::size_t count) {
  std::vector<double> pts(count * dim);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t d = 0; d < dim; ++d) pts[c * dim + d] = axis[idx[d]];
    for (std::size_t d = 0; d < dim; ++d) {
      if (++idx[d] < axis.size()) break;
      idx[d] = 0;
    }
  }
  return pts;
}

}  // namespace detail

inline constexpr std::size_t kDefaultGridCap = 5'000'000;

/// Brute-force f^*(p) = max over the grid box [-R, R]^N of <p,x> - f(x).
/// The grid count must be odd so that 0 is a grid point.
inline double fenchel_conjugate_grid(const ConvexFn& f, const TruncatedVector& p, double box_radius,
                                     int grid, std::size_t cap = kDefaultGridCap) {
  if (p.tag().side != Side::dual) throw UnsupportedTag("fenchel_conjugate_grid expects a dual vector");
  const SpaceTag primal = dual_of(p.tag());
  const std::size_t n = p.size();
  const auto axis = detail::axis_grid(box_radius, grid);
  const std::size_t count = detail::grid_size(n, grid, cap);
  const auto pts = detail::enumerate_grid(n, axis, count);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> x(n);
  for (std::size_t c = 0; c < count; ++c) {
    double lin = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      x[d] = pts[c * n + d];
      lin += p[d] * x[d];
    }
    const double fx = f(TruncatedVector(x, primal));
    if (std::isfinite(fx)) best = std::max(best, lin - fx);
  }
  return best;
}

/// f^**(x) at each sample by two nested grid conjugations. The dual grid
/// spans [-R', R']^N with R' = min(R, Lipschitz bound) when a bound is known
/// (the conjugate of an L-Lipschitz function is +inf outside the L-ball).
/// p -> <p,x> - f^*(p) is concave, so each sample then zooms in on its best
/// dual grid point with successively finer local dual grids; this removes the
/// dual lattice offset (for f = <q,.> the kink of f^* sits at q, generally
/// off the lattice) and leaves only the primal grid's discretisation.
inline std::vector<double> biconjugate_values(const ConvexFn& f,
                                              const std::vector<TruncatedVector>& samples,
                                              double box_radius, int grid,
                                              std::size_t cap = kDefaultGridCap) {
  if (samples.empty()) return {};
  const std::size_t n = samples.front().size();
  const SpaceTag primal = samples.front().tag();
  for (const auto& s : samples) {
    require_same_space(s, samples.front());
    if (norm_of(s.coords(), NormKind::sup) >= box_radius)
      throw SetupError("biconjugate sample lies outside the open grid box");
  }
  const auto axis = detail::axis_grid(box_radius, grid);
  const double dual_radius = f.lipschitz_bound && *f.lipschitz_bound > 0.0
                                 ? std::min(box_radius, *f.lipschitz_bound)
                                 : box_radius;
  const auto dual_axis = detail::axis_grid(dual_radius, grid);
  const std::size_t count = detail::grid_size(n, grid, cap);
  const auto xs = detail::enumerate_grid(n, axis, count);
  const auto ps = detail::enumerate_grid(n, dual_axis, count);

  std::vector<double> fx(count);
  for (std::size_t c = 0; c < count; ++c)
    fx[c] = f(TruncatedVector(std::vector<double>(xs.begin() + static_cast<std::ptrdiff_t>(c * n),
                                                  xs.begin() + static_cast<std::ptrdiff_t>((c + 1) * n)),
                              primal));

  // grid conjugate at an arbitrary dual point
  auto fstar_at = [&](const double* p) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t xc = 0; xc < count; ++xc) {
      double lin = 0.0;
      for (std::size_t d = 0; d < n; ++d) lin += p[d] * xs[xc * n + d];
      best = std::max(best, lin - fx[xc]);
    }
    return best;
  };

  std::vector<double> fstar(count);
  for (std::size_t pc = 0; pc < count; ++pc) fstar[pc] = fstar_at(&ps[pc * n]);

  // local zoom grids: 5 points per axis in low dimension, 3 otherwise
  const int zoom_pts = n <= 3 ? 5 : 3;
  double zoom_count_d = 1.0;
  for (std::size_t d = 0; d < n; ++d) zoom_count_d *= zoom_pts;
  const bool zoom = grid > 1 && zoom_count_d * static_cast<double>(count) <= static_cast<double>(cap) * 8.0;
  const auto zoom_count = static_cast<std::size_t>(zoom_count_d);
  const std::vector<double> unit_axis = detail::axis_grid(1.0, zoom_pts);
  const auto unit_pts = zoom ? detail::enumerate_grid(n, unit_axis, zoom_count) : std::vector<double>{};

  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_p(n, 0.0);
    for (std::size_t pc = 0; pc < count; ++pc) {
      double lin = 0.0;
      for (std::size_t d = 0; d < n; ++d) lin += ps[pc * n + d] * s[d];
      if (lin - fstar[pc] > best) {
        best = lin - fstar[pc];
        std::copy(ps.begin() + static_cast<std::ptrdiff_t>(pc * n),
                  ps.begin() + static_cast<std::ptrdiff_t>((pc + 1) * n), best_p.begin());
      }
    }
    if (zoom) {
      double half = grid > 1 ? 2.0 * dual_radius / (grid - 1) : 0.0;
      std::vector<double> p(n);
      for (int level = 0; level < 60 && half > 1e-12 * dual_radius; ++level) {
        const auto centre = best_p;
        for (std::size_t z = 0; z < zoom_count; ++z) {
          for (std::size_t d = 0; d < n; ++d)
            p[d] = std::clamp(centre[d] + half * unit_pts[z * n + d], -dual_radius, dual_radius);
          double lin = 0.0;
          for (std::size_t d = 0; d < n; ++d) lin += p[d] * s[d];
          const double v = lin - fstar_at(p.data());
          if (v > best) {
            best = v;
            best_p = p;
          }
        }
        half *= 0.5;
      }
    }
    out.push_back(best);
  }
  return out;
}

/// max |f^**(x) - f(x)| over the samples.
inline double biconjugate_check(const ConvexFn& f, const std::vector<TruncatedVector>& samples,
                                double box_radius, int grid, std::size_t cap = kDefaultGridCap) {
  const auto fss = biconjugate_values(f, samples, box_radius, grid, cap);
  double gap = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) gap = std::max(gap, std::abs(fss[i] - f(samples[i])));
  return gap;
}

}  // namespace limop
