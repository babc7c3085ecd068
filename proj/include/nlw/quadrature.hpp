#pragma once

#include <functional>

#include "nlw/logreal.hpp"

namespace nlw {

enum class QuadStatus { Converged, BudgetExceeded };

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  QuadStatus status = QuadStatus::Converged;
  bool ok() const { return status == QuadStatus::Converged; }
};

struct LogQuadResult {
  LogReal value;
  double rel_error = 0.0;
  long evaluations = 0;
  QuadStatus status = QuadStatus::Converged;
  bool ok() const { return status == QuadStatus::Converged; }
};

using Fn = std::function<double(double)>;
// Integrand that also receives the distances to the left and right endpoints,
// so endpoint singularities can be evaluated without cancellation.
using EndpointFn = std::function<double(double x, double dl, double dr)>;

// Adaptive Gauss-Kronrod (7/15) with global error control.
QuadResult integrate(const Fn& f, double a, double b, double rel_tol = 1e-12,
                     double abs_tol = 0.0, long max_eval = 2'000'000);

// Double-exponential rule, robust to integrable endpoint singularities.
QuadResult integrate_tanh_sinh(const EndpointFn& f, double a, double b, double rel_tol = 1e-12,
                               int max_level = 12);

// Integral of exp(logf) by shifting with the sampled maximum of logf.
LogQuadResult integrate_log(const Fn& logf, double a, double b, double rel_tol = 1e-12);
LogQuadResult integrate_log_tanh_sinh(const EndpointFn& logf, double a, double b,
                                      double rel_tol = 1e-12);

// Fixed n-point Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, double* nodes, double* weights);

}  // namespace nlw
