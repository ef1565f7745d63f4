#include "mcfsol/numerics/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace mcfsol::numerics {

std::size_t SymmetricTridiagonal::count_below(double x) const {
  const std::size_t n = diag.size();
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = diag[0] - x;
  if (q == 0.0) q = -tiny;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> SymmetricTridiagonal::gershgorin() const {
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo, hi};
}

double SymmetricTridiagonal::eigenvalue(std::size_t k) const {
  auto [lo, hi] = gershgorin();
  const double span = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-12 * span + std::numeric_limits<double>::min();
  hi += 1e-12 * span + std::numeric_limits<double>::min();
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymmetricTridiagonal::multiply(const std::vector<double>& v) const {
  const std::size_t n = diag.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += off[i - 1] * v[i - 1];
    if (i + 1 < n) s += off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

std::vector<double> SymmetricTridiagonal::eigenvector(double lambda) const {
  const std::size_t n = diag.size();
  if (n == 1) return {1.0};
  auto [glo, ghi] = gershgorin();
  const double norm = std::max(std::abs(glo), std::abs(ghi));
  const double eps = std::numeric_limits<double>::epsilon();

  // LU factorisation with partial pivoting of (T - lambda I).
  std::vector<double> dl(off), d(n), du(off), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<bool> swapped(n - 1, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = eps * norm;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  for (auto& p : d) {
    if (p == 0.0) p = eps * norm;
  }

  auto solve = [&](std::vector<double>& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t j = n - 2; j-- > 0;) {
      b[j] = (b[j] - du[j] * b[j + 1] - du2[j] * b[j + 2]) / d[j];
    }
  };

  std::vector<double> v(n, 1.0);
  for (int iter = 0; iter < 4; ++iter) {
    solve(v);
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
  }
  return v;
}

}  // namespace mcfsol::numerics
