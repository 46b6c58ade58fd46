#include "bnst/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace bnst {

EigenbasisEstimate EigenbasisEstimate::identity(Eigen::Index n) {
  EigenbasisEstimate e;
  e.w = Matrix::Identity(n, n);
  e.column_power = Eigen::VectorXd::Zero(n);
  return e;
}

std::pair<Eigen::Index, Eigen::Index> nextElement(int k, Eigen::Index n_t) {
  const int total = static_cast<int>(n_t * (n_t - 1) / 2);
  if (k < 1 || k > total) {
    throw std::invalid_argument("nextElement: stage index out of range");
  }
  int idx = k - 1;
  for (Eigen::Index l = 0; l < n_t - 1; ++l) {
    const int row = static_cast<int>(n_t - 1 - l);
    if (idx < row) return {l, l + 1 + idx};
    idx -= row;
  }
  throw std::logic_error("nextElement: unreachable");
}

LineSearchResult lineSearch(const std::function<double(double)>& w,
                            double half_range, double eta) {
  LineSearchResult res;
  const double resolution = eta * half_range;
  const double coarse = 4.0 * resolution;

  auto eval = [&](double a) {
    ++res.num_queries;
    return w(a);
  };

  // Coarse bracketing over the whole interval, endpoints included.
  double best_a = -half_range;
  double best_v = eval(best_a);
  for (double a = -half_range + coarse;; a += coarse) {
    if (a > half_range) a = half_range;
    const double v = eval(a);
    if (v < best_v) {
      best_v = v;
      best_a = a;
    }
    if (a >= half_range) break;
  }

  // Ternary refinement of the bracket around the best coarse probe.
  double lo = std::max(best_a - coarse, -half_range);
  double hi = std::min(best_a + coarse, half_range);
  while (hi - lo > 2.0 * resolution) {
    const double a1 = lo + (hi - lo) / 3.0;
    const double a2 = hi - (hi - lo) / 3.0;
    const double v1 = eval(a1);
    const double v2 = eval(a2);
    if (v1 < best_v) {
      best_v = v1;
      best_a = a1;
    }
    if (v2 < best_v) {
      best_v = v2;
      best_a = a2;
    }
    if (v1 <= v2) {
      hi = a2;
    } else {
      lo = a1;
    }
  }
  res.angle = best_a;
  return res;
}

Vector probeVector(Eigen::Index n, Eigen::Index l, Eigen::Index m,
                   double theta, double phi) {
  return rotationMatrix(n, {l, m, theta, phi}).col(l);
}

namespace {

double probe(FeedbackOracle& oracle, MeasurementModel model, const Matrix& w,
             Eigen::Index l, Eigen::Index m, double theta, double phi,
             int cycles) {
  const Vector x = w * probeVector(w.rows(), l, m, theta, phi);
  double acc = 0.0;
  for (int c = 0; c < std::max(cycles, 1); ++c) acc += oracle.query(model, x);
  return acc / std::max(cycles, 1);
}

}  // namespace

EigenbasisEstimate learningStage(FeedbackOracle& oracle,
                                 const EigenbasisEstimate& w, Eigen::Index l,
                                 Eigen::Index m, const SweepParams& params,
                                 MeasurementModel model) {
  if (l < 0 || m <= l || m >= w.w.cols()) {
    throw std::invalid_argument("learningStage: bad element indices");
  }
  const auto phi_search = lineSearch(
      [&](double phi) {
        return probe(oracle, model, w.w, l, m, params.theta_tilde, phi,
                     params.cycles_per_stage);
      },
      std::numbers::pi, params.eta);
  const auto theta_search = lineSearch(
      [&](double theta) {
        return probe(oracle, model, w.w, l, m, theta, phi_search.angle,
                     params.cycles_per_stage);
      },
      params.theta_max, params.eta);

  EigenbasisEstimate out = w;
  out.w = w.w * rotationMatrix(w.w.rows(),
                               {l, m, theta_search.angle, phi_search.angle});
  out.column_power(l) = oracle.query(model, Vector(out.w.col(l)));
  out.column_power(m) = oracle.query(model, Vector(out.w.col(m)));
  out.timestamp = oracle.clock();
  return out;
}

EigenbasisEstimate bnslSweep(FeedbackOracle& oracle,
                             const EigenbasisEstimate& w_init,
                             const SweepParams& params,
                             MeasurementModel model) {
  const Eigen::Index n = w_init.w.cols();
  EigenbasisEstimate est = w_init;
  const int stages = static_cast<int>(n * (n - 1) / 2);
  for (int k = 1; k <= stages; ++k) {
    const auto [l, m] = nextElement(k, n);
    est = learningStage(oracle, est, l, m, params, model);
  }

  // Final per-column interference probes fix the ordering.
  for (Eigen::Index j = 0; j < n; ++j) {
    est.column_power(j) = oracle.query(model, Vector(est.w.col(j)));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return est.column_power(a) < est.column_power(b);
  });
  EigenbasisEstimate sorted = est;
  for (Eigen::Index j = 0; j < n; ++j) {
    sorted.w.col(j) = est.w.col(order[static_cast<std::size_t>(j)]);
    sorted.column_power(j) = est.column_power(order[static_cast<std::size_t>(j)]);
  }
  sorted.timestamp = oracle.clock();
  return sorted;
}

}  // namespace bnst
