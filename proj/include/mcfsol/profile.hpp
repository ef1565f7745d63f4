#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcfsol/ambient.hpp"

namespace mcfsol {

namespace numerics {
class MonotoneCubic;
}

/// A positive-or-signed function of the radius r, as used for weighted
/// volumes, areas and spherical means.
class RadialFunction {
 public:
  enum class Kind { Power, Exponential, Table, Callable };

  /// coefficient * r^exponent
  static RadialFunction power(double exponent, double coefficient = 1.0);
  /// coefficient * exp(rate * r)
  static RadialFunction exponential(double rate, double coefficient = 1.0);
  /// Monotone cubic through (r, value); r strictly increasing, at least 4 points.
  static RadialFunction table(std::vector<double> r, std::vector<double> values);
  static RadialFunction callable(std::function<double(double)> f, std::string label);

  /// "power:k[:C]", "exp:a[:C]" or "csv:<path>" (two columns r,value).
  static RadialFunction parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  double rate() const { return rate_; }
  double coefficient() const { return coefficient_; }

  double operator()(double r) const;
  /// log f(r) for f > 0, computed without overflow for exponentials.
  double log_value(double r) const;
  /// Radii where the function is defined (tables only have a finite range).
  Interval domain() const;
  /// Knots of a table, where only C^1 regularity is guaranteed.
  std::vector<double> kinks() const;
  std::string description() const;

  /// Closed form of the integral of 1/f over [r, inf) for power and
  /// exponential kinds; nullopt otherwise, +inf when it diverges.
  std::optional<double> reciprocal_tail(double r) const;

 private:
  Kind kind_ = Kind::Power;
  double exponent_ = 0.0;
  double rate_ = 0.0;
  double coefficient_ = 1.0;
  std::shared_ptr<const numerics::MonotoneCubic> table_;
  std::function<double(double)> fn_;
  std::string label_;
};

}  // namespace mcfsol
