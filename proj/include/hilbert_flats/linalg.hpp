#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "hilbert_flats/error.hpp"

namespace hflat {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Small dense helpers
// ---------------------------------------------------------------------------

inline Vec singular_values(const Mat& m) {
  if (m.size() == 0) return Vec();
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

/// Rank at a cutoff relative to the largest singular value.
inline int numeric_rank(const Mat& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return 0;
  const Vec s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

/// Orthonormal basis (columns) of the right null space of `m`.
inline Mat null_space(const Mat& m, double rel_tol = 1e-9) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec s = svd.singularValues();
  int r = 0;
  const double top = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (top > 0.0 && s(i) > rel_tol * top) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis (columns) of the column space of `m`.
inline Mat column_space(const Mat& m, double rel_tol = 1e-9) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Vec s = svd.singularValues();
  int r = 0;
  const double top = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (top > 0.0 && s(i) > rel_tol * top) ++r;
  }
  return svd.matrixU().leftCols(r);
}

inline Mat columns_of(const std::vector<Vec>& vs) {
  if (vs.empty()) return Mat();
  Mat m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  return m;
}

/// Calls `fn(indices)` for every k-subset of {0..n-1} in lexicographic order.
/// Enumeration stops early when `fn` returns false.
inline void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// ---------------------------------------------------------------------------
// Linear programming
//
// Dense two-phase simplex with Bland's rule. Problem sizes in this library
// are a few hundred constraints at most, so the tableau is kept dense.
// ---------------------------------------------------------------------------

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = kInf;
};

/// minimize cost·x  subject to  A x = b, x >= 0.
inline LpResult solve_standard_lp(const Vec& cost, const Mat& a_in, const Vec& b_in, double tol = 1e-11) {
  const Eigen::Index m = a_in.rows();
  const Eigen::Index n = a_in.cols();
  LpResult result;
  if (m == 0) {
    if ((cost.array() < -tol).any()) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.x = Vec::Zero(n);
    result.objective = 0.0;
    return result;
  }

  Mat a = a_in;
  Vec b = b_in;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double scale = std::max(a.row(i).cwiseAbs().maxCoeff(), std::abs(b(i)));
    if (scale > 0.0) {
      a.row(i) /= scale;
      b(i) /= scale;
    }
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) *= -1.0;
    }
  }

  // Tableau columns: n originals, m artificials, rhs.
  const Eigen::Index cols = n + m + 1;
  Mat t = Mat::Zero(m + 1, cols);
  t.topLeftCorner(m, n) = a;
  t.block(0, n, m, m) = Mat::Identity(m, m);
  t.block(0, cols - 1, m, 1) = b;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  auto pivot = [&](Eigen::Index row, Eigen::Index col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index r = 0; r <= m; ++r) {
      if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  };

  // Returns false when unbounded. Phase one is bounded below, so there a
  // column with no eligible pivot only carries round-off in its reduced cost
  // and is passed over instead.
  auto run = [&](Eigen::Index allowed_cols, bool bounded) -> bool {
    for (int iter = 0; iter < 50000; ++iter) {
      Eigen::Index enter = -1, leave = -1;
      for (Eigen::Index j = 0; j < allowed_cols && leave < 0; ++j) {
        if (!(t(m, j) < -tol)) continue;
        double best = kInf;
        for (Eigen::Index i = 0; i < m; ++i) {
          if (t(i, j) > tol) {
            const double ratio = t(i, cols - 1) / t(i, j);
            if (ratio < best - 1e-15 ||
                (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
              best = ratio;
              leave = i;
            }
          }
        }
        if (leave >= 0) {
          enter = j;
        } else if (!bounded) {
          return false;
        }
      }
      if (enter < 0) return true;
      pivot(leave, enter);
    }
    return true;
  };

  // Phase one: minimize the sum of artificials.
  t.row(m).setZero();
  for (Eigen::Index j = n; j < n + m; ++j) t(m, j) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  run(n + m, true);
  if (-t(m, cols - 1) > 1e-9) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive remaining artificials out of the basis.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= n) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(t(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase two.
  t.row(m).setZero();
  t.block(m, 0, 1, n) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bcol = basis[static_cast<std::size_t>(i)];
    if (bcol < n && cost(bcol) != 0.0) t.row(m) -= cost(bcol) * t.row(i);
  }
  if (!run(n, false)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bcol = basis[static_cast<std::size_t>(i)];
    if (bcol < n) result.x(bcol) = t(i, cols - 1);
  }
  result.objective = cost.dot(result.x);
  return result;
}

/// Builder for small LPs with free variables and inequality rows.
class LinearProgram {
 public:
  enum class Sense { LessEq, Equal, GreaterEq };

  int add_variable(bool free) {
    free_.push_back(free);
    return static_cast<int>(free_.size()) - 1;
  }

  void add_constraint(const Vec& coeffs, Sense sense, double rhs) {
    rows_.push_back({coeffs, sense, rhs});
  }

  int num_variables() const { return static_cast<int>(free_.size()); }

  /// Minimizes cost·x. The returned `x` is in the builder's variable space.
  LpResult minimize(const Vec& cost, double tol = 1e-11) const {
    const int nv = num_variables();
    std::vector<int> pos(static_cast<std::size_t>(nv)), neg(static_cast<std::size_t>(nv), -1);
    int n = 0;
    for (int v = 0; v < nv; ++v) {
      pos[static_cast<std::size_t>(v)] = n++;
      if (free_[static_cast<std::size_t>(v)]) neg[static_cast<std::size_t>(v)] = n++;
    }
    const int first_slack = n;
    for (const auto& r : rows_) {
      if (r.sense != Sense::Equal) ++n;
    }
    Mat a = Mat::Zero(static_cast<Eigen::Index>(rows_.size()), n);
    Vec b(static_cast<Eigen::Index>(rows_.size()));
    int slack = first_slack;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& r = rows_[i];
      for (int v = 0; v < nv && v < r.coeffs.size(); ++v) {
        a(static_cast<Eigen::Index>(i), pos[static_cast<std::size_t>(v)]) = r.coeffs(v);
        if (neg[static_cast<std::size_t>(v)] >= 0) a(static_cast<Eigen::Index>(i), neg[static_cast<std::size_t>(v)]) = -r.coeffs(v);
      }
      if (r.sense == Sense::LessEq) a(static_cast<Eigen::Index>(i), slack++) = 1.0;
      if (r.sense == Sense::GreaterEq) a(static_cast<Eigen::Index>(i), slack++) = -1.0;
      b(static_cast<Eigen::Index>(i)) = r.rhs;
    }
    Vec c = Vec::Zero(n);
    for (int v = 0; v < nv; ++v) {
      c(pos[static_cast<std::size_t>(v)]) = cost(v);
      if (neg[static_cast<std::size_t>(v)] >= 0) c(neg[static_cast<std::size_t>(v)]) = -cost(v);
    }
    LpResult std_res = solve_standard_lp(c, a, b, tol);
    LpResult out;
    out.status = std_res.status;
    out.objective = std_res.objective;
    if (std_res.status == LpStatus::Optimal) {
      out.x = Vec::Zero(nv);
      for (int v = 0; v < nv; ++v) {
        out.x(v) = std_res.x(pos[static_cast<std::size_t>(v)]);
        if (neg[static_cast<std::size_t>(v)] >= 0) out.x(v) -= std_res.x(neg[static_cast<std::size_t>(v)]);
      }
    }
    return out;
  }

 private:
  struct Row {
    Vec coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

/// L1 distance from `target` to the cone spanned by the columns of
/// `generators` (nonnegative combinations). Zero iff target lies in the cone.
inline double cone_membership_residual(const Mat& generators, const Vec& target, Vec* weights = nullptr) {
  const Eigen::Index d = generators.rows();
  const Eigen::Index m = generators.cols();
  Mat a(d, m + 2 * d);
  a << generators, Mat::Identity(d, d), -Mat::Identity(d, d);
  Vec cost = Vec::Zero(m + 2 * d);
  cost.tail(2 * d).setOnes();
  const LpResult res = solve_standard_lp(cost, a, target);
  if (res.status != LpStatus::Optimal) return kInf;
  if (weights) *weights = res.x.head(m);
  return (target - generators * res.x.head(m)).lpNorm<1>();
}

/// Facets of the polyhedral cone spanned by the columns of `generators`,
/// assumed pointed and of full dimension. Each returned row `f` has unit
/// norm, satisfies f·g >= 0 on every generator and vanishes on a set of
/// generators of rank dim-1.
inline Mat cone_facets(const Mat& generators, double tol = 1e-10) {
  const int d = static_cast<int>(generators.rows());
  const int m = static_cast<int>(generators.cols());
  std::vector<Vec> facets;
  if (d == 1) {
    Mat out(1, 1);
    out(0, 0) = generators.sum() >= 0 ? 1.0 : -1.0;
    return out;
  }
  Mat unit = generators;
  for (int j = 0; j < m; ++j) unit.col(j).normalize();
  for_each_combination(m, d - 1, [&](const std::vector<int>& idx) {
    Mat sub(d - 1, d);
    for (int r = 0; r < d - 1; ++r) sub.row(r) = unit.col(idx[static_cast<std::size_t>(r)]).transpose();
    Eigen::JacobiSVD<Mat> svd(sub, Eigen::ComputeFullV);
    const Vec s = svd.singularValues();
    if (s(d - 2) <= 1e-9 * s(0)) return true;
    Vec f = svd.matrixV().col(d - 1);
    const Vec vals = unit.transpose() * f;
    if (vals.minCoeff() >= -tol) {
      // keep orientation
    } else if (vals.maxCoeff() <= tol) {
      f = -f;
    } else {
      return true;
    }
    for (const auto& g : facets) {
      if ((g - f).norm() < 1e-8) return true;
    }
    facets.push_back(f);
    return true;
  });
  Mat out(static_cast<Eigen::Index>(facets.size()), d);
  for (std::size_t i = 0; i < facets.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = facets[i].transpose();
  return out;
}

// ---------------------------------------------------------------------------
// Low-discrepancy sequences
// ---------------------------------------------------------------------------

inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

/// Halton point `index` in [0,1)^dim; `offset` shifts the sequence start so
/// different seeds give different (still deterministic) point sets.
inline Vec halton_point(std::uint64_t index, int dim, std::uint64_t offset = 0) {
  static constexpr std::uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  Vec p(dim);
  for (int i = 0; i < dim; ++i) p(i) = radical_inverse(index + offset + 1, kPrimes[i % 16]);
  return p;
}

// ---------------------------------------------------------------------------
// Lattice reduction
// ---------------------------------------------------------------------------

/// In-place LLL reduction of the rows of `basis` (floating point, desk scale).
/// Rows are assumed linearly independent.
inline void lll_reduce_rows(Mat& basis, double delta = 0.99) {
  const Eigen::Index n = basis.rows();
  if (n <= 1) return;
  auto gram_schmidt = [&](Mat& bstar, Mat& mu) {
    bstar = basis;
    mu = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        const double nn = bstar.row(j).squaredNorm();
        mu(i, j) = nn > 0 ? basis.row(i).dot(bstar.row(j)) / nn : 0.0;
        bstar.row(i) -= mu(i, j) * bstar.row(j);
      }
    }
  };
  Mat bstar, mu;
  gram_schmidt(bstar, mu);
  Eigen::Index k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const double q = std::round(mu(k, j));
      if (q != 0.0) {
        basis.row(k) -= q * basis.row(j);
        gram_schmidt(bstar, mu);
      }
    }
    const double lhs = bstar.row(k).squaredNorm();
    const double rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar.row(k - 1).squaredNorm();
    if (lhs >= rhs) {
      ++k;
    } else {
      basis.row(k).swap(basis.row(k - 1));
      gram_schmidt(bstar, mu);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
}

}  // namespace hflat
