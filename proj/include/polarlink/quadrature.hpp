// Gaussian quadrature rules used by the capacity integrals.
//
// Nodes and weights are generated at first use from the orthogonal-polynomial
// recurrences (bisection on sign changes for Hermite, Newton iteration for
// Legendre) and validated by moment tests in the suite; no tables are
// hard-coded.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polarlink {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Orthonormal Hermite value h~_n(x) for weight e^{-x^2}, plus h~_{n-1}
// needed for the derivative identity h~_n'(x) = sqrt(2n) h~_{n-1}(x).
inline void hermite_pair(int n, double x, double* hn, double* hn_1) {
  double prev = 0.0;                               // h~_{-1}
  double cur = std::pow(std::acos(-1.0), -0.25);   // h~_0 = pi^{-1/4}
  for (int k = 0; k < n; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1)) * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  *hn = cur;
  *hn_1 = prev;
}

}  // namespace detail

// n-point Gauss-Hermite rule: sum_i w_i f(x_i) ~ integral e^{-x^2} f(x) dx.
inline QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  QuadratureRule rule;
  const double bound = std::sqrt(2.0 * n + 1.0);
  const double step = 1.0 / (2.0 * bound);  // finer than the minimal root gap
  double h_prev, dummy;
  detail::hermite_pair(n, 0.0, &h_prev, &dummy);
  std::vector<double> roots;
  if (n % 2 == 1) roots.push_back(0.0);
  double x_prev = 0.0;
  for (double x = step; x <= bound + step; x += step) {
    double h, d;
    detail::hermite_pair(n, x, &h, &d);
    if ((h_prev < 0.0) != (h < 0.0)) {
      double lo = x_prev, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        double hm, dm;
        detail::hermite_pair(n, mid, &hm, &dm);
        if ((hm < 0.0) == (h_prev < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    h_prev = h;
    x_prev = x;
  }
  for (double r : roots) {
    double h, hm1;
    detail::hermite_pair(n, r, &h, &hm1);
    const double deriv = std::sqrt(2.0 * n) * hm1;
    const double w = 2.0 / (deriv * deriv);
    rule.nodes.push_back(r);
    rule.weights.push_back(w);
    if (r > 0.0) {
      rule.nodes.push_back(-r);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// n-point Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  const double pi = std::acos(-1.0);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = p1;
        p1 = p;
        p = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      const double dp = n * (x * p - p1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        p1 = 1.0;
        p = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = p1;
          p1 = p;
          p = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        break;
      }
    }
    const double dp = n * (x * p - p1) / (x * x - 1.0);
    const std::size_t idx = static_cast<std::size_t>(i);
    rule.nodes[idx] = a + 0.5 * (b - a) * (1.0 - x);
    rule.weights[idx] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace polarlink
