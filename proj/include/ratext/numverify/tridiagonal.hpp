#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ratext::numverify {

/// Uniform grid with Dirichlet walls at lo and hi; interior points
/// x_i = lo + i h, i = 1..N, with h = (hi - lo) / (N + 1).
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t N = 16;

  double h() const { return (hi - lo) / static_cast<double>(N + 1); }
  double x(std::size_t i) const { return lo + static_cast<double>(i + 1) * h(); }  // i = 0..N-1
  std::vector<double> points() const {
    std::vector<double> p(N);
    for (std::size_t i = 0; i < N; ++i) p[i] = x(i);
    return p;
  }
};

inline Grid make_grid(double lo, double hi, std::size_t N) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid misconfiguration: need finite lo < hi");
  }
  if (N < 16) throw std::invalid_argument("grid misconfiguration: need N >= 16");
  return {lo, hi, N};
}

/// -d^2/dx^2 + V on a grid: diagonal 2/h^2 + V(x_i), off-diagonal -1/h^2.
struct TridiagonalOperator {
  std::vector<double> diagonal;
  double off_diagonal = 0.0;
  double h = 1.0;  // grid spacing, used for the inner product

  std::size_t dimension() const { return diagonal.size(); }
};

inline TridiagonalOperator discretize(const std::function<double(double)>& potential, const Grid& grid) {
  const double h = grid.h();
  TridiagonalOperator op;
  op.off_diagonal = -1.0 / (h * h);
  op.h = h;
  op.diagonal.resize(grid.N);
  for (std::size_t i = 0; i < grid.N; ++i) {
    const double x = grid.x(i);
    const double v = potential(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "discretize: non-finite potential sample at x = " << x;
      throw std::domain_error(os.str());
    }
    op.diagonal[i] = 2.0 / (h * h) + v;
  }
  return op;
}

struct NumericSpectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // normalized: sum h u_i^2 = 1
};

namespace detail {

// Number of eigenvalues strictly below lambda (sign count of the LDL^T pivots).
inline std::size_t sturm_count(const TridiagonalOperator& op, double lambda) {
  const double b2 = op.off_diagonal * op.off_diagonal;
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < op.dimension(); ++i) {
    q = op.diagonal[i] - lambda - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

// Solves (T - sigma) x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> shifted_solve(const TridiagonalOperator& op, double sigma, std::vector<double> b) {
  const std::size_t n = op.dimension();
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, op.off_diagonal);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = op.diagonal[i] - sigma;
    du[i] = op.off_diagonal;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      dl[i] = 0.0;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
      const double t = d[i + 1];
      d[i + 1] = du[i] - f * t;
      du[i] = t;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      dl[i] = 0.0;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du[k] * x[k + 1];
    if (k + 2 < n) s -= du2[k] * x[k + 2];
    x[k] = s / d[k];
  }
  return x;
}

}  // namespace detail

/// The `count` smallest eigenvalues by bisection on the Sturm count (absolute
/// resolution 1e-12), eigenvectors by inverse iteration.
inline NumericSpectrum eigen_lowest(const TridiagonalOperator& op, std::size_t count, bool vectors = true) {
  if (count > op.dimension()) throw std::invalid_argument("eigen_lowest: count exceeds dimension");
  const double b = std::abs(op.off_diagonal);
  double glo = op.diagonal.empty() ? 0.0 : op.diagonal[0];
  double ghi = glo;
  for (double d : op.diagonal) {
    glo = std::min(glo, d - 2 * b);
    ghi = std::max(ghi, d + 2 * b);
  }
  NumericSpectrum out;
  out.eigenvalues.reserve(count);
  double lower = glo;
  for (std::size_t k = 0; k < count; ++k) {
    double lo = lower;
    double hi = ghi;
    // Smallest lambda with more than k eigenvalues below it.
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (detail::sturm_count(op, mid) > k) hi = mid;
      else lo = mid;
    }
    out.eigenvalues.push_back(0.5 * (lo + hi));
    lower = lo;
  }
  if (!vectors) return out;
  const std::size_t n = op.dimension();
  const double h = op.h;
  for (std::size_t k = 0; k < count; ++k) {
    const double lambda = out.eigenvalues[k];
    const double sigma = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 + 0.01 * std::sin(0.37 * static_cast<double>(i) + 1.0);
    for (int it = 0; it < 4; ++it) {
      u = detail::shifted_solve(op, sigma, u);
      // Keep clear of the levels already found.
      for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(out.eigenvalues[j] - lambda) > 1e-6 * std::max(1.0, std::abs(lambda))) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += u[i] * out.eigenvectors[j][i] * h;
        for (std::size_t i = 0; i < n; ++i) u[i] -= dot * out.eigenvectors[j][i];
      }
      double norm = 0.0;
      for (double c : u) norm += c * c;
      norm = std::sqrt(norm * h);
      for (double& c : u) c /= norm;
    }
    // Fix the sign so that the first significant component is positive.
    for (double c : u) {
      if (std::abs(c) > 1e-8) {
        if (c < 0) for (double& d : u) d = -d;
        break;
      }
    }
    out.eigenvectors.push_back(std::move(u));
  }
  return out;
}

}  // namespace ratext::numverify
