#pragma once

#include <random>
#include <string>
#include <vector>

#include "bnst/feedback.hpp"

// Superimposed data transmission during tracking: constellation design under
// the Q1/Q2 energy-measurement constraints, transmit-side superposition
// r2(t) = c(t) r1, and the averaging decoder.
namespace bnst {

struct SuperpositionAlphabet {
  std::vector<Complex> symbols;
  std::vector<double> priors;  // uniform by default
  MeasurementModel model = MeasurementModel::Q1;

  /// C = 1 + E{c}.
  Complex meanShift() const;
};

struct ConstraintReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the model-appropriate constraints:
///   Q1: E{|1+c|^2} = 1 and E{c} != -1;
///   Q2: |1 + E{c}|^2 = 1.
ConstraintReport validateAlphabet(const SuperpositionAlphabet& a);

/// {e^{i theta0}, e^{-i theta0}} with uniform priors; C = 1 + cos(theta0).
/// theta0 = pi is rejected (C = 0 breaks decoding).
SuperpositionAlphabet binaryAlphabet(double theta0,
                                     MeasurementModel model = MeasurementModel::Q1);

struct SuperposedFrame {
  Vector r1;
  std::vector<int> c_sequence;
  std::vector<Vector> transmit_vectors;  // (1 + c_i) r1 per slot
};

SuperposedFrame superimpose(const Vector& r1,
                            const std::vector<int>& symbol_indices,
                            const SuperpositionAlphabet& a);

/// Arithmetic mean of the received slots.
Vector receiverAverage(const std::vector<Vector>& y2);

/// Min-distance decision: Delta y2 = y2(t) - ybar/C against hypotheses
/// H_i = (c_i / C) ybar. Ties break toward the lowest index.
int decodeSymbol(const Vector& y2_t, const Vector& ybar,
                 const SuperpositionAlphabet& a);

/// Simulates the superimposed frame and the plain learning frame through the
/// interference path and returns 10 log10( Q(y1) / Q(y1_0) ).
double deltaY1Db(const Matrix& h12, const Matrix& t, const Vector& r1,
                 const SuperposedFrame& frame, double noise_variance,
                 MeasurementModel model, std::mt19937_64& rng);

}  // namespace bnst
