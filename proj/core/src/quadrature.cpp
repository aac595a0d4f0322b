#include "cachewave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "cachewave/errors.hpp"

namespace cachewave {

namespace {

// 15-point Kronrod abscissae (positive half, descending) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes. Values from QUADPACK
// qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct WorseFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

double checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x=" << x;
    throw QuadratureFailure(msg.str());
  }
  return v;
}

Panel kronrod15(const std::function<double(double)>& f, double a, double b,
                int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double result_k = fc * kWgk[7];
  double result_g = fc * kWg[3];
  double result_abs = std::abs(result_k);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, center - dx);
    f2[j] = checked(f, center + dx);
    const double sum = f1[j] + f2[j];
    result_k += kWgk[j] * sum;
    result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) result_g += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * result_k;
  double result_asc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  result_k *= half;
  result_g *= half;
  result_abs *= std::abs(half);
  result_asc *= std::abs(half);

  double err = std::abs(result_k - result_g);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (result_abs > tiny / (50.0 * eps)) {
    err = std::max(eps * 50.0 * result_abs, err);
  }
  return Panel{a, b, result_k, err, depth};
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const QuadratureOptions& options) {
  if (!(options.rel_tol > 0.0 && options.rel_tol <= 0.1)) {
    throw InvalidArgument("quadrature rel_tol must lie in (0, 0.1]");
  }
  if (!(a < b)) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("quadrature limits must be finite");
  }

  constexpr std::size_t kEvalsPerPanel = 15;
  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> heap;
  Panel first = kronrod15(f, a, b, 0);
  double total = first.value;
  double total_err = first.error;
  std::size_t evaluations = kEvalsPerPanel;
  heap.push(first);

  auto tolerance = [&] {
    return std::max(options.rel_tol * std::abs(total), options.abs_floor);
  };

  while (total_err > tolerance()) {
    const Panel worst = heap.top();
    if (worst.depth + 1 > options.max_depth) {
      std::ostringstream msg;
      msg << "quadrature exceeded depth " << options.max_depth << " on ["
          << worst.a << ", " << worst.b << "] (error " << total_err << ")";
      throw QuadratureFailure(msg.str());
    }
    if (heap.size() >= options.max_panels) {
      std::ostringstream msg;
      msg << "quadrature exhausted " << options.max_panels
          << " panels on [" << a << ", " << b << "] (error " << total_err
          << ")";
      throw QuadratureFailure(msg.str());
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = kronrod15(f, worst.a, mid, worst.depth + 1);
    const Panel right = kronrod15(f, mid, worst.b, worst.depth + 1);
    evaluations += 2 * kEvalsPerPanel;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in interval order so the result does not carry update drift.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  IntegralResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.evaluations = evaluations;
  return out;
}

}  // namespace cachewave
