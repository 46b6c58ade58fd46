#pragma once

#include <Eigen/Dense>
#include <complex>

// Complex linear-algebra kernel: plane rotations, spectral norm, a cyclic
// Jacobi eigendecomposition for Hermitian matrices, and null-space extraction.
namespace bnst {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Parameters of a two-dimensional complex plane rotation acting on
/// coordinates (l, m), 0-based with l < m. Angles are wrapped to the
/// canonical ranges theta in [-pi/2, pi/2], phi in [-pi, pi] on construction.
struct RotationParams {
  Eigen::Index l = 0;
  Eigen::Index m = 1;
  double theta = 0.0;
  double phi = 0.0;

  RotationParams(Eigen::Index l_, Eigen::Index m_, double theta_, double phi_);
};

/// n x n unitary matrix equal to identity except for the (l, m) plane:
///   (l,l) = (m,m) = cos(theta),
///   (l,m) = e^{+i phi} sin(theta),  (m,l) = -e^{-i phi} sin(theta).
Matrix rotationMatrix(Eigen::Index n, const RotationParams& p);

/// Largest singular value of a.
double spectralNorm(const Matrix& a);

struct JacobiAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Rotation angles (theta, phi) that annihilate the (l, m) entry of the 2x2
/// Hermitian block [[a_ll, a_lm], [conj(a_lm), a_mm]] under the congruence
/// R^* A R, with R = rotationMatrix. Closed form: phi = arg(a_lm),
/// tan(2 theta) = 2|a_lm| / (a_mm - a_ll), theta = pi/4 when the diagonal
/// entries coincide. Among the annihilating branches the one minimizing the
/// rotated (l,l) entry is returned, which is also the rotation a
/// feedback-only minimizer of that entry converges to.
JacobiAngles jacobiAngles(Complex a_ll, Complex a_mm, Complex a_lm);

struct EigResult {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns, G = V diag(values) V^*
};

/// Cyclic-by-row Jacobi eigendecomposition of a Hermitian matrix. Sweeps
/// until the largest off-diagonal magnitude drops below tol; throws after
/// 100 sweeps without convergence.
EigResult hermitianEigOracle(const Matrix& g, double tol);

/// Orthonormal basis of the kernel of h (rows < cols expected), obtained from
/// the eigendecomposition of h^* h. Columns v satisfy ||h v|| <= tol ||h||.
Matrix nullSpace(const Matrix& h, double tol = 1e-10);

}  // namespace bnst
