#pragma once

#include <functional>
#include <utility>

#include "bnst/feedback.hpp"

// Blind Null Space Learning: cyclic element ordering, feedback-only line
// searches over phi and theta, one learning stage, and the full BNSL sweep.
// All channel access in this module goes through FeedbackOracle::query.
namespace bnst {

struct SweepParams {
  double theta_tilde = 0.0;
  double theta_max = 0.0;
  double eta = 0.1;
  int cycles_per_stage = 1;  // feedback cycles averaged per probe
};

struct EigenbasisEstimate {
  Matrix w;                     // N_t x N_t, unitary
  Eigen::VectorXd column_power; // estimated interference power per column
  double timestamp = 0.0;

  static EigenbasisEstimate identity(Eigen::Index n);
};

/// Row-cyclic enumeration of strictly-upper-triangular pairs for stage k
/// (1-based): (0,1),(0,2),...,(0,n-1),(1,2),... in 0-based indices.
std::pair<Eigen::Index, Eigen::Index> nextElement(int k, Eigen::Index n_t);

struct LineSearchResult {
  double angle = 0.0;
  int num_queries = 0;
};

/// Derivative-free minimization of a scalar-feedback function over
/// [-half_range, half_range]: coarse probes at spacing 4 eta half_range,
/// then ternary refinement of the best bracket down to eta half_range.
/// Each evaluation of w costs one feedback cycle.
LineSearchResult lineSearch(const std::function<double(double)>& w,
                            double half_range, double eta);

/// Probe combination for stage (l, m): the (l, m)-plane rotation applied to
/// the l-th standard basis vector.
Vector probeVector(Eigen::Index n, Eigen::Index l, Eigen::Index m,
                   double theta, double phi);

/// One learning stage: phi line search at theta = theta_tilde over [-pi, pi],
/// theta line search at the found phi over [-theta_max, theta_max], then
/// W <- W R(theta_hat, phi_hat). Column-power estimates for columns l and m
/// are refreshed from two direct feedback probes.
EigenbasisEstimate learningStage(FeedbackOracle& oracle,
                                 const EigenbasisEstimate& w, Eigen::Index l,
                                 Eigen::Index m, const SweepParams& params,
                                 MeasurementModel model = MeasurementModel::Q1);

/// Full sweep: N_t(N_t-1)/2 stages in nextElement order, then columns sorted
/// by ascending estimated interference power (probed once per column).
EigenbasisEstimate bnslSweep(FeedbackOracle& oracle,
                             const EigenbasisEstimate& w_init,
                             const SweepParams& params,
                             MeasurementModel model = MeasurementModel::Q1);

}  // namespace bnst
