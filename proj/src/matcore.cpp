#include "bnst/matcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bnst {
namespace {

double wrapToPi(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  return x;
}

double wrapToHalfPi(double x) {
  // theta enters only through cos/sin of a plane rotation, period pi.
  x = std::remainder(x, std::numbers::pi);
  return x;
}

void requireHermitianEntry(Complex d, const char* what) {
  if (std::abs(d.imag()) > 1e-10) {
    throw std::invalid_argument(std::string("jacobiAngles: ") + what +
                                " has non-real diagonal beyond tolerance");
  }
}

}  // namespace

RotationParams::RotationParams(Eigen::Index l_, Eigen::Index m_, double theta_,
                               double phi_)
    : l(l_), m(m_), theta(wrapToHalfPi(theta_)), phi(wrapToPi(phi_)) {
  if (l < 0 || m <= l) {
    throw std::invalid_argument("RotationParams: need 0 <= l < m");
  }
}

Matrix rotationMatrix(Eigen::Index n, const RotationParams& p) {
  if (p.m >= n) {
    throw std::invalid_argument("rotationMatrix: index exceeds dimension");
  }
  Matrix r = Matrix::Identity(n, n);
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex e = std::polar(1.0, p.phi);
  r(p.l, p.l) = c;
  r(p.m, p.m) = c;
  r(p.l, p.m) = e * s;
  r(p.m, p.l) = -std::conj(e) * s;
  return r;
}

double spectralNorm(const Matrix& a) {
  if (a.size() == 0) {
    throw std::invalid_argument("spectralNorm: empty matrix");
  }
  return a.jacobiSvd().singularValues()(0);
}

JacobiAngles jacobiAngles(Complex a_ll, Complex a_mm, Complex a_lm) {
  requireHermitianEntry(a_ll, "a_ll");
  requireHermitianEntry(a_mm, "a_mm");
  JacobiAngles out;
  const double g = std::abs(a_lm);
  if (g == 0.0) {
    return out;  // already diagonal in this plane
  }
  out.phi = std::arg(a_lm);
  // Branch that also minimizes the rotated (l,l) entry, so the l-th diagonal
  // value ends up no larger than the m-th. Ties give theta = pi/4.
  out.theta = 0.5 * std::atan2(2.0 * g, a_mm.real() - a_ll.real());
  return out;
}

EigResult hermitianEigOracle(const Matrix& g, double tol) {
  const Eigen::Index n = g.rows();
  if (n != g.cols() || (g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("hermitianEigOracle: input not Hermitian");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("hermitianEigOracle: tol must be positive");
  }
  Matrix a = (g + g.adjoint()) / 2.0;
  Matrix v = Matrix::Identity(n, n);

  auto maxOffDiag = [&]() {
    double mx = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        mx = std::max(mx, std::abs(a(i, j)));
      }
    }
    return mx;
  };

  int sweep = 0;
  while (maxOffDiag() >= tol) {
    if (++sweep > 100) {
      throw std::runtime_error("hermitianEigOracle: no convergence after 100 sweeps");
    }
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index m = l + 1; m < n; ++m) {
        if (std::abs(a(l, m)) < tol / 10.0) continue;
        const JacobiAngles ang = jacobiAngles(a(l, l), a(m, m), a(l, m));
        const Matrix r = rotationMatrix(n, {l, m, ang.theta, ang.phi});
        a = r.adjoint() * a * r;
        v = v * r;
      }
    }
  }

  EigResult res;
  res.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) res.values(i) = a(i, i).real();

  // sort ascending
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return res.values(i) < res.values(j);
  });
  Eigen::VectorXd sorted(n);
  Matrix vs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted(i) = res.values(order[i]);
    vs.col(i) = v.col(order[i]);
  }
  res.values = sorted;
  res.vectors = vs;
  return res;
}

Matrix nullSpace(const Matrix& h, double tol) {
  const EigResult eig = hermitianEigOracle(h.adjoint() * h, 1e-13);
  // The iterated diagonal accumulates rounding noise of order eps*||G||, so
  // rank is decided on the direct residuals of the candidate vectors.
  const double thresh = tol * spectralNorm(h);
  Eigen::Index dim = 0;
  while (dim < eig.values.size() &&
         (h * eig.vectors.col(dim)).norm() <= thresh) {
    ++dim;
  }
  return eig.vectors.leftCols(dim);
}

}  // namespace bnst
