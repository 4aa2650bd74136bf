#pragma once

// Dense complex matrix kernel shared by every physics module.

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace collbell {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

enum class Party { A, B };

/// Spectrum of a Hermitian matrix, eigenvalues sorted descending and the
/// matching orthonormal eigenvectors stored column-wise.
struct EigDecomposition {
  RVector values;
  CMatrix vectors;
};

/// Positive-part thresholds are this fraction of the spectral radius.
inline constexpr double kRelativeTau = 1e-9;

/// Tolerance used when checking Hermiticity, relative to max(1, ||h||_F).
inline constexpr double kHermitianTol = 1e-12;

/// Kronecker product: out(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& h, double rel_tol = kHermitianTol);

/// Hermitian eigendecomposition of (h + h^dagger)/2. Throws
/// std::invalid_argument for non-square input and NumericFailure if h is not
/// Hermitian within kHermitianTol.
EigDecomposition eig_hermitian(const CMatrix& h);

/// Projector onto the span of eigenvectors with eigenvalue > tau.
CMatrix positive_part_projector(const CMatrix& h, double tau);

/// Same, with tau = kRelativeTau * spectral radius of h.
CMatrix positive_part_projector(const CMatrix& h);

/// Partial trace of an operator on C^dA (x) C^dB, keeping the given party.
CMatrix partial_trace(const CMatrix& m, int dA, int dB, Party keep);

/// tr_A[ m (opA (x) 1_B) ], an operator on B. For Hermitian m and opA the
/// result is Hermitian, and tr(m (opA (x) opB)) = tr(steer_to_b(...) opB).
CMatrix steer_to_b(const CMatrix& m, int dA, int dB, const CMatrix& opA);

/// tr_B[ m (1_A (x) opB) ], an operator on A.
CMatrix steer_to_a(const CMatrix& m, int dA, int dB, const CMatrix& opB);

/// tr(x * y) without forming the product.
cplx trace_of_product(const CMatrix& x, const CMatrix& y);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase
/// of R's diagonal removed).
CMatrix haar_unitary(int d, std::mt19937_64& rng);

/// Complex Ginibre matrix with independent standard normal real and
/// imaginary parts.
CMatrix ginibre(int rows, int cols, std::mt19937_64& rng);

}  // namespace collbell
