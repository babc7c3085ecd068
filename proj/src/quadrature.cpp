#include "nlw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "nlw/errors.hpp"

namespace nlw {

namespace {

const double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * kWgk[7], g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double s = f(c - x) + f(c + x);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {a, b, k * h, std::fabs((k - g) * h)};
}

}  // namespace

QuadResult integrate(const Fn& f, double a, double b, double rel_tol, double abs_tol, long max_eval) {
  QuadResult res;
  if (a == b) return res;
  std::priority_queue<Panel> heap;
  const int nsub = 8;
  double total = 0.0, err = 0.0;
  for (int i = 0; i < nsub; ++i) {
    Panel p = gk15(f, a + (b - a) * i / nsub, a + (b - a) * (i + 1) / nsub);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  res.evaluations = 15 * nsub;
  while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (res.evaluations >= max_eval) {
      res.status = QuadStatus::BudgetExceeded;
      break;
    }
    Panel p = heap.top();
    double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b) break;  // interval exhausted in floating point
    heap.pop();
    Panel l = gk15(f, p.a, m), r = gk15(f, m, p.b);
    res.evaluations += 30;
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
  }
  // Resum to limit drift from incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  return res;
}

namespace {

constexpr double kTmax = 6.0;

// Calls visit(x, dl, dr, w) for abscissae t = t0 + j*h, j >= 0 with |t| <= kTmax.
template <class Visit>
void ts_nodes(double a, double b, double h, bool odd_only, Visit&& visit) {
  double hw = 0.5 * (b - a);
  const double half_pi = 0.5 * std::numbers::pi;
  auto emit = [&](double t) {
    double s = half_pi * std::sinh(t);
    double e = std::exp(-2.0 * std::fabs(s));
    double near = hw * 2.0 * e / (1.0 + e);
    double w = hw * half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (near <= 0.0 || w <= 0.0) return;
    if (t >= 0) visit(b - near, 2.0 * hw - near, near, w);
    else visit(a + near, near, 2.0 * hw - near, w);
  };
  if (!odd_only) emit(0.0);
  for (long j = 1;; ++j) {
    if (odd_only && j % 2 == 0) continue;
    double t = j * h;
    if (t > kTmax) break;
    emit(t);
    emit(-t);
  }
}

}  // namespace

QuadResult integrate_tanh_sinh(const EndpointFn& f, double a, double b, double rel_tol, int max_level) {
  QuadResult res;
  if (a == b) return res;
  double h = 0.5;
  double sum = 0.0;
  ts_nodes(a, b, h, false, [&](double x, double dl, double dr, double w) {
    sum += w * f(x, dl, dr);
    ++res.evaluations;
  });
  double est = sum * h;
  res.status = QuadStatus::BudgetExceeded;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    ts_nodes(a, b, h, true, [&](double x, double dl, double dr, double w) {
      sum += w * f(x, dl, dr);
      ++res.evaluations;
    });
    double next = sum * h;
    res.error = std::fabs(next - est);
    est = next;
    if (level >= 3 && res.error <= rel_tol * std::fabs(est)) {
      res.status = QuadStatus::Converged;
      break;
    }
  }
  res.value = est;
  return res;
}

LogQuadResult integrate_log(const Fn& logf, double a, double b, double rel_tol) {
  LogQuadResult out;
  const int n = 512;
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) m = std::max(m, logf(a + (b - a) * i / n));
  if (!std::isfinite(m)) {
    if (m > 0) throw NumericError("log-integrand is not finite");
    return out;
  }
  QuadResult r = integrate([&](double x) { return std::exp(logf(x) - m); }, a, b, rel_tol);
  out.value = LogReal::from(r.value);
  out.value.log_abs += m;
  out.rel_error = r.value != 0.0 ? r.error / std::fabs(r.value) : 0.0;
  out.evaluations = r.evaluations + n + 1;
  out.status = r.status;
  return out;
}

LogQuadResult integrate_log_tanh_sinh(const EndpointFn& logf, double a, double b, double rel_tol) {
  LogQuadResult out;
  double m = -std::numeric_limits<double>::infinity();
  ts_nodes(a, b, 1.0 / 16, false, [&](double x, double dl, double dr, double) {
    m = std::max(m, logf(x, dl, dr));
  });
  if (!std::isfinite(m)) {
    if (m > 0) throw NumericError("log-integrand is not finite");
    return out;
  }
  QuadResult r = integrate_tanh_sinh(
      [&](double x, double dl, double dr) { return std::exp(logf(x, dl, dr) - m); }, a, b, rel_tol);
  out.value = LogReal::from(r.value);
  out.value.log_abs += m;
  out.rel_error = r.value != 0.0 ? r.error / std::fabs(r.value) : 0.0;
  out.evaluations = r.evaluations;
  out.status = r.status;
  return out;
}

void gauss_legendre(int n, double* nodes, double* weights) {
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace nlw
