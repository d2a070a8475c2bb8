#include "gupspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gupspec/errors.hpp"

namespace gupspec {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK values).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Gauss weights attach to the odd-indexed Kronrod nodes.
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct WorstFirst {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a; // deterministic tie-break
  }
};

constexpr std::size_t kEvaluationBudget = 1'000'000;

Panel evaluate_panel(const std::function<double(double)>& fn, double a,
                     double b, std::size_t& evaluations) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double offset = half * kNodes[i];
    double sum;
    if (i == 7) {
      sum = fn(mid);
      ++evaluations;
      if (!std::isfinite(sum)) throw NonFiniteIntegrand(mid);
    } else {
      const double xl = mid - offset;
      const double xr = mid + offset;
      const double fl = fn(xl);
      const double fr = fn(xr);
      evaluations += 2;
      if (!std::isfinite(fl)) throw NonFiniteIntegrand(xl);
      if (!std::isfinite(fr)) throw NonFiniteIntegrand(xr);
      sum = fl + fr;
    }
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::fabs(kronrod - gauss)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& fn,
                                    double a, double b, double tol) {
  if (!(a < b))
    throw std::invalid_argument("integrate_adaptive: requires a < b");
  if (!(tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: requires tol > 0");

  std::size_t evaluations = 0;
  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> active;
  std::vector<Panel> finished; // panels too narrow to split further

  Panel whole = evaluate_panel(fn, a, b, evaluations);
  double total_value = whole.value;
  double total_error = whole.error;
  active.push(whole);

  while (total_error > std::max(tol * std::fabs(total_value), tol)) {
    if (active.empty())
      throw MaxSubdivisions(evaluations); // tolerance unreachable
    Panel worst = active.top();
    active.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      finished.push_back(worst); // cannot split at this precision
      continue;
    }
    if (evaluations + 30 > kEvaluationBudget)
      throw MaxSubdivisions(evaluations);

    Panel left = evaluate_panel(fn, worst.a, mid, evaluations);
    Panel right = evaluate_panel(fn, mid, worst.b, evaluations);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  // Re-sum panels left to right so the result does not carry the drift of
  // the running totals.
  while (!active.empty()) {
    finished.push_back(active.top());
    active.pop();
  }
  std::sort(finished.begin(), finished.end(),
            [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
  QuadratureResult result;
  for (const Panel& panel : finished) {
    result.value += panel.value;
    result.error_estimate += panel.error;
  }
  result.evaluations = evaluations;
  return result;
}

TurningPointMap::TurningPointMap(double x1, double x2)
    : center(0.5 * (x1 + x2)), half_width(0.5 * (x2 - x1)) {
  if (!(x1 < x2))
    throw std::invalid_argument("TurningPointMap: requires x1 < x2");
}

double TurningPointMap::x(double theta) const {
  return center + half_width * std::sin(theta);
}

double TurningPointMap::jacobian(double theta) const {
  return half_width * std::cos(theta);
}

} // namespace gupspec
