#include "bnst/superpose.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bnst {
namespace {

constexpr double kConstraintTol = 1e-12;

std::vector<double> effectivePriors(const SuperpositionAlphabet& a) {
  if (!a.priors.empty()) return a.priors;
  return std::vector<double>(a.symbols.size(), 1.0 / a.symbols.size());
}

}  // namespace

Complex SuperpositionAlphabet::meanShift() const {
  const auto p = effectivePriors(*this);
  Complex mean(0.0, 0.0);
  for (std::size_t i = 0; i < symbols.size(); ++i) mean += p[i] * symbols[i];
  return Complex(1.0, 0.0) + mean;
}

ConstraintReport validateAlphabet(const SuperpositionAlphabet& a) {
  ConstraintReport rep;
  if (a.symbols.empty()) {
    rep.violations.push_back("alphabet is empty");
    return rep;
  }
  const auto p = effectivePriors(a);
  if (p.size() != a.symbols.size()) {
    rep.violations.push_back("priors length does not match alphabet size");
    return rep;
  }
  double psum = 0.0;
  for (double v : p) {
    psum += v;
    if (!(v > 0.0)) rep.violations.push_back("prior not positive");
  }
  if (std::abs(psum - 1.0) > kConstraintTol) {
    rep.violations.push_back("priors do not sum to 1");
  }

  Complex mean(0.0, 0.0);
  double shifted_power = 0.0;
  for (std::size_t i = 0; i < a.symbols.size(); ++i) {
    mean += p[i] * a.symbols[i];
    shifted_power += p[i] * std::norm(Complex(1.0, 0.0) + a.symbols[i]);
  }

  if (a.model == MeasurementModel::Q1) {
    if (std::abs(shifted_power - 1.0) > kConstraintTol) {
      std::ostringstream os;
      os << "Q1: E{|1+c|^2} = " << shifted_power << " != 1";
      rep.violations.push_back(os.str());
    }
    if (std::abs(mean - Complex(-1.0, 0.0)) <= kConstraintTol) {
      rep.violations.push_back("Q1: E{c} = -1 (C = 0)");
    }
  } else {
    const double q2 = std::norm(Complex(1.0, 0.0) + mean);
    if (std::abs(q2 - 1.0) > kConstraintTol) {
      std::ostringstream os;
      os << "Q2: |1 + E{c}|^2 = " << q2 << " != 1";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

SuperpositionAlphabet binaryAlphabet(double theta0, MeasurementModel model) {
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi)) {
    throw std::invalid_argument("binaryAlphabet: need 0 < theta0 < pi");
  }
  SuperpositionAlphabet a;
  a.symbols = {std::polar(1.0, theta0), std::polar(1.0, -theta0)};
  a.priors = {0.5, 0.5};
  a.model = model;
  return a;
}

SuperposedFrame superimpose(const Vector& r1,
                            const std::vector<int>& symbol_indices,
                            const SuperpositionAlphabet& a) {
  SuperposedFrame f;
  f.r1 = r1;
  f.c_sequence = symbol_indices;
  f.transmit_vectors.reserve(symbol_indices.size());
  for (int idx : symbol_indices) {
    if (idx < 0 || idx >= static_cast<int>(a.symbols.size())) {
      throw std::out_of_range("superimpose: symbol index out of range");
    }
    f.transmit_vectors.push_back(
        (Complex(1.0, 0.0) + a.symbols[static_cast<std::size_t>(idx)]) * r1);
  }
  return f;
}

Vector receiverAverage(const std::vector<Vector>& y2) {
  if (y2.empty()) {
    throw std::invalid_argument("receiverAverage: empty input");
  }
  Vector mean = Vector::Zero(y2.front().size());
  for (const Vector& v : y2) mean += v;
  return mean / static_cast<double>(y2.size());
}

int decodeSymbol(const Vector& y2_t, const Vector& ybar,
                 const SuperpositionAlphabet& a) {
  const Complex c_shift = a.meanShift();
  if (std::abs(c_shift) <= kConstraintTol) {
    throw std::domain_error("decodeSymbol: C = 0, no reference");
  }
  if (ybar.norm() == 0.0) {
    throw std::domain_error("decodeSymbol: zero averaged signal");
  }
  const Vector delta = y2_t - ybar / c_shift;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.symbols.size(); ++i) {
    const Vector hyp = (a.symbols[i] / c_shift) * ybar;
    const double d = (delta - hyp).norm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double deltaY1Db(const Matrix& h12, const Matrix& t, const Vector& r1,
                 const SuperposedFrame& frame, double noise_variance,
                 MeasurementModel model, std::mt19937_64& rng) {
  const Vector base = h12 * (t * r1);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance / 2.0));
  auto noisy = [&](const Vector& v) {
    Vector y = v;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y(i) += Complex(gauss(rng), gauss(rng));
    }
    return y;
  };

  std::vector<Vector> superimposed, plain;
  superimposed.reserve(frame.transmit_vectors.size());
  plain.reserve(frame.transmit_vectors.size());
  for (const Vector& x : frame.transmit_vectors) {
    superimposed.push_back(noise_variance > 0.0 ? noisy(h12 * (t * x))
                                                : Vector(h12 * (t * x)));
    plain.push_back(noise_variance > 0.0 ? noisy(base) : base);
  }
  const auto measure = model == MeasurementModel::Q1 ? measureQ1 : measureQ2;
  return 10.0 * std::log10(measure(superimposed) / measure(plain));
}

}  // namespace bnst
