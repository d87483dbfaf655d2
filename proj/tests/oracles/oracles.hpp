#pragma once

// Reference computations used only by tests. Nothing here calls the library's
// partition or thermodynamics engines.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace abring::testing {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Fixed-length compensated sum of exp(-beta E_n), n = 0..terms-1, in long double.
inline long double boltzmann_sum(const std::function<long double(std::int64_t)>& level,
                                 long double beta, std::int64_t terms) {
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (std::int64_t n = 0; n < terms; ++n) {
    const long double t = std::exp(-beta * level(n));
    const long double y = sum + t;
    comp += std::fabs(sum) >= t ? (sum - y) + t : (t - y) + sum;
    sum = y;
  }
  return sum + comp;
}

/// Numerical quadrature of exp(-beta sqrt(B x + C)) over [0, inf).
inline double integral_by_quadrature(double beta, double B, double C) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double x) { return std::exp(-beta * std::sqrt(B * x + C)); },
                              1e-13);
}

/// The Euler-Maclaurin expression with its literal correction coefficients, in 50 digits.
inline Float50 em_literal_mp(Float50 beta, Float50 A, Float50 B, Float50 C, int order) {
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  const Float50 sc = sqrt(C);
  Float50 bracket = Float50(2) / (B * beta * beta) * (1 + beta * sc) + Float50(1) / 2;
  if (order >= 1) bracket += (B / (24 * sc) - B * B * B / (720 * C * C * sc)) * beta;
  if (order >= 2) bracket += (A / (2 * C) - B * B / (8 * C * C)) * beta * beta / 90;
  return exp(-beta * sc) * bracket;
}

/// -1/12 f'(0) + 1/720 f'''(0) for f(x) = exp(-beta sqrt(B x + C)), by forward-mode autodiff.
inline double em_corrections_by_autodiff(double beta, double B, double C, int order) {
  using namespace boost::math::differentiation;
  const auto x = make_fvar<double, 3>(0.0);
  const auto f = exp(-beta * sqrt(B * x + C));
  double sum = 0.0;
  if (order >= 1) sum += -f.derivative(1) / 12.0;
  if (order >= 2) sum += f.derivative(3) / 720.0;
  return sum;
}

/// Central first derivative, second order, step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0) {
  return std::mt19937_64(0x5eed'ab1e'2024ULL ^ salt);
}

inline double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace abring::testing
