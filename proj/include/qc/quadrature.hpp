#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qc {

struct QuadResult {
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;   // false when the evaluation cap was hit
  bool hit_infinity = false;  // integrand returned a non-finite value
};

// Adaptive Simpson on [a,b] with an absolute tolerance and a hard cap on the
// number of integrand evaluations. A non-finite integrand value anywhere on
// the stencil aborts the refinement and propagates through `value`.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol = 1e-10, std::size_t max_evals = 1u << 20);

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Nodes/weights by Newton iteration on P_m; cached per order.
const GaussLegendre& gauss_legendre(int m);

// Fixed-order Gauss-Legendre of f over [a,b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order = 32);

}  // namespace qc
