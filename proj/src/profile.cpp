#include "mcfsol/profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/interp.hpp"

namespace mcfsol {

namespace {

double parse_number(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used == text.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ParseError, "bad number '" + text + "' in profile '" + spec + "'");
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

RadialFunction RadialFunction::power(double exponent, double coefficient) {
  if (!std::isfinite(exponent) || !std::isfinite(coefficient)) {
    fail(ErrorCode::InvalidParams, "power profile needs finite exponent and coefficient");
  }
  RadialFunction f;
  f.kind_ = Kind::Power;
  f.exponent_ = exponent;
  f.coefficient_ = coefficient;
  return f;
}

RadialFunction RadialFunction::exponential(double rate, double coefficient) {
  if (!std::isfinite(rate) || !std::isfinite(coefficient)) {
    fail(ErrorCode::InvalidParams, "exponential profile needs finite rate and coefficient");
  }
  RadialFunction f;
  f.kind_ = Kind::Exponential;
  f.rate_ = rate;
  f.coefficient_ = coefficient;
  return f;
}

RadialFunction RadialFunction::table(std::vector<double> r, std::vector<double> values) {
  if (r.size() != values.size()) fail(ErrorCode::InvalidParams, "table columns differ in length");
  if (r.size() < 4) fail(ErrorCode::InsufficientSamples, "a profile table needs at least 4 rows");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(values[i])) {
      fail(ErrorCode::InvalidParams, "table entries must be finite");
    }
    if (i > 0 && !(r[i] > r[i - 1])) fail(ErrorCode::InvalidParams, "table radii must increase");
  }
  RadialFunction f;
  f.kind_ = Kind::Table;
  f.table_ = std::make_shared<const numerics::MonotoneCubic>(std::move(r), std::move(values));
  return f;
}

RadialFunction RadialFunction::callable(std::function<double(double)> fn, std::string label) {
  RadialFunction f;
  f.kind_ = Kind::Callable;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

RadialFunction RadialFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "profile '" + spec + "' has no kind prefix");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "csv") {
    std::ifstream in(rest);
    if (!in) fail(ErrorCode::ParseError, "cannot open profile table '" + rest + "'");
    std::vector<double> r, v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        fail(ErrorCode::ParseError, rest + ":" + std::to_string(lineno) + ": expected r,value");
      }
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      if (r.empty() && v.empty() && !a.empty() && std::isalpha(static_cast<unsigned char>(a[0]))) continue;
      r.push_back(parse_number(a, spec));
      v.push_back(parse_number(b.substr(0, b.find_last_not_of(" \r") + 1), spec));
    }
    return table(std::move(r), std::move(v));
  }
  const auto second = rest.find(':');
  const double p = parse_number(rest.substr(0, second), spec);
  const double coef = second == std::string::npos ? 1.0 : parse_number(rest.substr(second + 1), spec);
  if (head == "power") return power(p, coef);
  if (head == "exp") return exponential(p, coef);
  fail(ErrorCode::ParseError, "unknown profile kind '" + head + "'");
}

double RadialFunction::operator()(double r) const {
  switch (kind_) {
    case Kind::Power: return coefficient_ * std::pow(r, exponent_);
    case Kind::Exponential: return coefficient_ * std::exp(rate_ * r);
    case Kind::Table: {
      const auto d = domain();
      if (!(r >= d.lo && r <= d.hi)) fail(ErrorCode::OutOfDomain, "radius outside the profile table");
      return (*table_)(r);
    }
    case Kind::Callable: return fn_(r);
  }
  return 0.0;
}

double RadialFunction::log_value(double r) const {
  switch (kind_) {
    case Kind::Power: return std::log(coefficient_) + exponent_ * std::log(r);
    case Kind::Exponential: return std::log(coefficient_) + rate_ * r;
    default: return std::log((*this)(r));
  }
}

Interval RadialFunction::domain() const {
  if (kind_ == Kind::Table) return {table_->x().front(), table_->x().back()};
  return {0.0, kInf};
}

std::vector<double> RadialFunction::kinks() const {
  if (kind_ != Kind::Table) return {};
  return {table_->x().begin(), table_->x().end()};
}

std::string RadialFunction::description() const {
  switch (kind_) {
    case Kind::Power: return "power:" + format_number(exponent_) + ":" + format_number(coefficient_);
    case Kind::Exponential: return "exp:" + format_number(rate_) + ":" + format_number(coefficient_);
    case Kind::Table: return "table[" + std::to_string(table_->x().size()) + "]";
    case Kind::Callable: return label_;
  }
  return "";
}

std::optional<double> RadialFunction::reciprocal_tail(double r) const {
  switch (kind_) {
    case Kind::Power:
      if (exponent_ <= 1.0) return kInf;
      return std::pow(r, 1.0 - exponent_) / (coefficient_ * (exponent_ - 1.0));
    case Kind::Exponential:
      if (rate_ <= 0.0) return kInf;
      return std::exp(-rate_ * r) / (coefficient_ * rate_);
    default: return std::nullopt;
  }
}

}  // namespace mcfsol
