#pragma once

#include <cstddef>
#include <vector>

namespace mcfsol::numerics {

/// Real symmetric tridiagonal matrix: `diag` has n entries, `off` has n-1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }

  /// Number of eigenvalues strictly below x (Sturm sequence count).
  std::size_t count_below(double x) const;

  /// Gershgorin interval containing the spectrum.
  std::pair<double, double> gershgorin() const;

  /// k-th smallest eigenvalue (k = 0 is the smallest), by bisection on the
  /// Sturm count to near machine precision.
  double eigenvalue(std::size_t k) const;

  /// Unit eigenvector for an (accurately known) eigenvalue, by inverse
  /// iteration with a partially pivoted tridiagonal factorisation.
  std::vector<double> eigenvector(double lambda) const;

  std::vector<double> multiply(const std::vector<double>& v) const;
};

}  // namespace mcfsol::numerics
