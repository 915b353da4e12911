#pragma once

// Truncated sequence spaces: R^N carrying a norm tag (c0/l-infinity, l1, l2)
// on either the primal or the dual side, the dual pairing between them, and
// linear operators with exact adjoints.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "limop/errors.hpp"

namespace limop {

enum class NormKind { sup, one, two };
enum class Side { primal, dual };

inline std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::sup: return "sup";
    case NormKind::one: return "one";
    case NormKind::two: return "two";
  }
  return "unknown";
}

struct SpaceTag {
  NormKind norm = NormKind::sup;
  Side side = Side::primal;

  friend constexpr bool operator==(const SpaceTag&, const SpaceTag&) = default;

  static constexpr SpaceTag c0() { return {NormKind::sup, Side::primal}; }
  static constexpr SpaceTag l1_dual() { return {NormKind::one, Side::dual}; }
  static constexpr SpaceTag l2() { return {NormKind::two, Side::primal}; }
  static constexpr SpaceTag l2_dual() { return {NormKind::two, Side::dual}; }
  static constexpr SpaceTag l1() { return {NormKind::one, Side::primal}; }
  // l-infinity as the dual of l1; never used as a domain whose dual is needed.
  static constexpr SpaceTag linf_dual() { return {NormKind::sup, Side::dual}; }
};

inline std::string to_string(const SpaceTag& t) {
  return (t.side == Side::primal ? "primal:" : "dual:") + to_string(t.norm);
}

/// Dual-side tag of a primal space, or the primal (pre-dual) tag of a dual
/// space. The dual of a one-norm primal is rejected.
inline SpaceTag dual_of(const SpaceTag& t) {
  if (t.side == Side::primal) {
    switch (t.norm) {
      case NormKind::sup: return SpaceTag::l1_dual();
      case NormKind::two: return SpaceTag::l2_dual();
      case NormKind::one:
        throw UnsupportedTag("dual of a one-norm primal space is not modeled");
    }
  }
  switch (t.norm) {
    case NormKind::one: return SpaceTag::c0();
    case NormKind::two: return SpaceTag::l2();
    case NormKind::sup: return SpaceTag::l1();
  }
  throw UnsupportedTag("unknown tag");
}

inline bool is_dual_pair(const SpaceTag& dual, const SpaceTag& primal) {
  if (dual.side != Side::dual || primal.side != Side::primal) return false;
  return (dual.norm == NormKind::one && primal.norm == NormKind::sup) ||
         (dual.norm == NormKind::two && primal.norm == NormKind::two) ||
         (dual.norm == NormKind::sup && primal.norm == NormKind::one);
}

class TruncatedVector {
 public:
  /// Empty placeholder (N = 0); only valid as an assignment target.
  TruncatedVector() = default;
  TruncatedVector(std::vector<double> coords, SpaceTag tag)
      : coords_(std::move(coords)), tag_(tag) {
    if (coords_.empty()) throw DimensionError("truncated vector needs N >= 1");
    for (double c : coords_)
      if (!std::isfinite(c)) throw NonFinite("truncated vector coordinate is not finite");
  }
  TruncatedVector(std::initializer_list<double> coords, SpaceTag tag)
      : TruncatedVector(std::vector<double>(coords), tag) {}

  static TruncatedVector zeros(std::size_t n, SpaceTag tag) {
    return TruncatedVector(std::vector<double>(n, 0.0), tag);
  }
  static TruncatedVector basis(std::size_t n, std::size_t k, SpaceTag tag, double scale = 1.0) {
    if (k >= n) throw DimensionError("basis index out of range");
    std::vector<double> c(n, 0.0);
    c[k] = scale;
    return TruncatedVector(std::move(c), tag);
  }
  static TruncatedVector constant(std::size_t n, double value, SpaceTag tag) {
    return TruncatedVector(std::vector<double>(n, value), tag);
  }

  std::size_t size() const { return coords_.size(); }
  const SpaceTag& tag() const { return tag_; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  TruncatedVector retagged(SpaceTag tag) const { return TruncatedVector(coords_, tag); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
  }

  friend bool operator==(const TruncatedVector&, const TruncatedVector&) = default;

 private:
  std::vector<double> coords_;
  SpaceTag tag_{};
};

inline void require_same_space(const TruncatedVector& a, const TruncatedVector& b) {
  if (a.size() != b.size())
    throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  if (a.tag() != b.tag())
    throw DimensionError("tag mismatch: " + to_string(a.tag()) + " vs " + to_string(b.tag()));
}

/// a + s*b, both in the same space.
inline TruncatedVector axpy(const TruncatedVector& a, double s, const TruncatedVector& b) {
  require_same_space(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return TruncatedVector(std::move(out), a.tag());
}

inline TruncatedVector operator+(const TruncatedVector& a, const TruncatedVector& b) {
  return axpy(a, 1.0, b);
}
inline TruncatedVector operator-(const TruncatedVector& a, const TruncatedVector& b) {
  return axpy(a, -1.0, b);
}
inline TruncatedVector operator*(double s, const TruncatedVector& v) {
  std::vector<double> out(v.values());
  for (double& c : out) c *= s;
  return TruncatedVector(std::move(out), v.tag());
}

inline double norm_of(std::span<const double> c, NormKind kind) {
  switch (kind) {
    case NormKind::sup: {
      double m = 0.0;
      for (double x : c) m = std::max(m, std::abs(x));
      return m;
    }
    case NormKind::one: {
      double s = 0.0;
      for (double x : c) s += std::abs(x);
      return s;
    }
    case NormKind::two: {
      // scaled accumulation keeps tiny and huge coordinates exact enough
      double scale = 0.0;
      for (double x : c) scale = std::max(scale, std::abs(x));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double x : c) s += (x / scale) * (x / scale);
      return scale * std::sqrt(s);
    }
  }
  return 0.0;
}

/// Norm given by the vector's own tag (for dual vectors this is the dual norm).
inline double norm(const TruncatedVector& v) { return norm_of(v.coords(), v.tag().norm); }
inline double dual_norm(const TruncatedVector& p) { return norm(p); }

inline double pairing(const TruncatedVector& p, const TruncatedVector& x) {
  if (p.size() != x.size())
    throw DimensionError("pairing dimension mismatch: " + std::to_string(p.size()) + " vs " +
                         std::to_string(x.size()));
  if (!is_dual_pair(p.tag(), x.tag()))
    throw DimensionError("pairing needs a dual pair, got " + to_string(p.tag()) + " and " +
                         to_string(x.tag()));
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * x[i];
  return s;
}

/// Bounded linear operator between truncated spaces, stored densely,
/// diagonally, or as the identity embedding between two tags.
class LinearOp {
 public:
  struct Dense {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;  // row-major
  };
  struct Diagonal {
    std::vector<double> diag;
  };
  struct Embedding {
    std::size_t n = 0;
  };

  static LinearOp dense(std::size_t rows, std::size_t cols, std::vector<double> data,
                        SpaceTag domain, SpaceTag codomain) {
    if (rows == 0 || cols == 0 || data.size() != rows * cols)
      throw DimensionError("dense operator data does not match rows*cols");
    return LinearOp(Dense{rows, cols, std::move(data)}, domain, codomain);
  }
  static LinearOp diagonal(std::vector<double> diag, SpaceTag domain, SpaceTag codomain) {
    if (diag.empty()) throw DimensionError("diagonal operator needs N >= 1");
    return LinearOp(Diagonal{std::move(diag)}, domain, codomain);
  }
  static LinearOp embedding(std::size_t n, SpaceTag domain, SpaceTag codomain) {
    if (n == 0) throw DimensionError("embedding needs N >= 1");
    return LinearOp(Embedding{n}, domain, codomain);
  }
  static LinearOp identity(std::size_t n, SpaceTag tag = SpaceTag::c0()) {
    return embedding(n, tag, tag);
  }
  static LinearOp zero(std::size_t n, SpaceTag tag = SpaceTag::c0()) {
    return diagonal(std::vector<double>(n, 0.0), tag, tag);
  }

  const SpaceTag& domain() const { return domain_; }
  const SpaceTag& codomain() const { return codomain_; }

  std::size_t in_dim() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Dense>) return k.cols;
          else if constexpr (std::is_same_v<K, Diagonal>) return k.diag.size();
          else return k.n;
        },
        kind_);
  }
  std::size_t out_dim() const {
    if (const auto* d = std::get_if<Dense>(&kind_)) return d->rows;
    return in_dim();
  }

  TruncatedVector apply(const TruncatedVector& y) const {
    if (y.size() != in_dim() || y.tag() != domain_)
      throw DimensionError("apply: argument does not live in the operator domain");
    return TruncatedVector(action(y.values(), false), codomain_);
  }

  /// T* p for p in the dual of the codomain; result lies in the dual of the domain.
  TruncatedVector adjoint_apply(const TruncatedVector& p) const {
    if (p.size() != out_dim() || p.tag() != dual_of(codomain_))
      throw DimensionError("adjoint_apply: argument does not live in the dual of the codomain");
    return TruncatedVector(action(p.values(), true), dual_of(domain_));
  }

  /// Entry (i, j) of the matrix representation.
  double entry(std::size_t i, std::size_t j) const {
    if (const auto* d = std::get_if<Dense>(&kind_)) return d->data[i * d->cols + j];
    if (const auto* g = std::get_if<Diagonal>(&kind_)) return i == j ? g->diag[i] : 0.0;
    return i == j ? 1.0 : 0.0;
  }

  /// Upper bound on ||T||: exact for one-norm domains (max column norm) and
  /// for sup->sup (max row sum); otherwise the column bound times the
  /// equivalence constant of the domain norm against the one-norm.
  double norm_bound() const {
    const std::size_t n = in_dim(), m = out_dim();
    if (domain_.norm == NormKind::sup && codomain_.norm == NormKind::sup) {
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(entry(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    double col_max = 0.0;
    std::vector<double> col(m);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) col[i] = entry(i, j);
      col_max = std::max(col_max, norm_of(col, codomain_.norm));
    }
    switch (domain_.norm) {
      case NormKind::one: return col_max;
      case NormKind::two: return std::sqrt(static_cast<double>(n)) * col_max;
      case NormKind::sup: return static_cast<double>(n) * col_max;
    }
    return col_max;
  }

  std::string kind_name() const {
    if (std::holds_alternative<Dense>(kind_)) return "dense";
    if (std::holds_alternative<Diagonal>(kind_)) return "diagonal";
    return "embedding";
  }

 private:
  using Kind = std::variant<Dense, Diagonal, Embedding>;

  LinearOp(Kind kind, SpaceTag domain, SpaceTag codomain)
      : kind_(std::move(kind)), domain_(domain), codomain_(codomain) {
    if (domain_.side != Side::primal || codomain_.side != Side::primal)
      throw UnsupportedTag("operators act between primal spaces");
  }

  std::vector<double> action(const std::vector<double>& v, bool transpose) const {
    if (const auto* d = std::get_if<Dense>(&kind_)) {
      std::vector<double> out(transpose ? d->cols : d->rows, 0.0);
      for (std::size_t i = 0; i < d->rows; ++i)
        for (std::size_t j = 0; j < d->cols; ++j) {
          const double a = d->data[i * d->cols + j];
          if (transpose) out[j] += a * v[i];
          else out[i] += a * v[j];
        }
      return out;
    }
    if (const auto* g = std::get_if<Diagonal>(&kind_)) {
      std::vector<double> out(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = g->diag[i] * v[i];
      return out;
    }
    return v;
  }

  Kind kind_;
  SpaceTag domain_;
  SpaceTag codomain_;
};

inline TruncatedVector apply(const LinearOp& t, const TruncatedVector& y) { return t.apply(y); }
inline TruncatedVector adjoint_apply(const LinearOp& t, const TruncatedVector& p) {
  return t.adjoint_apply(p);
}

}  // namespace limop
