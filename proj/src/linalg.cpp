#include "collbell/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "collbell/errors.hpp"

namespace collbell {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  CMatrix out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& h, double rel_tol) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, h.norm());
  return (h - h.adjoint()).norm() <= rel_tol * scale;
}

EigDecomposition eig_hermitian(const CMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("eig_hermitian: matrix must be square and non-empty, got " +
                                std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  if (!h.allFinite()) throw NumericFailure("eig_hermitian: non-finite entries");
  if (!is_hermitian(h)) throw NumericFailure("eig_hermitian: matrix is not Hermitian");

  const CMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericFailure("eig_hermitian: solver did not converge");

  // Eigen sorts ascending.
  const Eigen::Index n = h.rows();
  EigDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

CMatrix positive_part_projector(const CMatrix& h, double tau) {
  const EigDecomposition eig = eig_hermitian(h);
  const Eigen::Index n = h.rows();
  Eigen::Index rank = 0;
  while (rank < n && eig.values(rank) > tau) ++rank;
  const auto v = eig.vectors.leftCols(rank);
  return v * v.adjoint();
}

CMatrix positive_part_projector(const CMatrix& h) {
  const EigDecomposition eig = eig_hermitian(h);
  const Eigen::Index n = h.rows();
  const double radius = std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
  const double tau = kRelativeTau * radius;
  Eigen::Index rank = 0;
  while (rank < n && eig.values(rank) > tau) ++rank;
  const auto v = eig.vectors.leftCols(rank);
  return v * v.adjoint();
}

namespace {

// acc += x * y without the NaN/Inf recovery path of std::complex operator*.
inline void fma_complex(cplx& acc, const cplx& x, const cplx& y) {
  acc = cplx(acc.real() + x.real() * y.real() - x.imag() * y.imag(),
             acc.imag() + x.real() * y.imag() + x.imag() * y.real());
}

void check_bipartite(const CMatrix& m, int dA, int dB, const char* who) {
  if (dA < 1 || dB < 1 || m.rows() != Eigen::Index(dA) * dB || m.cols() != m.rows()) {
    throw std::invalid_argument(std::string(who) + ": expected a square matrix of dimension " +
                                std::to_string(dA) + "*" + std::to_string(dB) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, int dA, int dB, Party keep) {
  check_bipartite(m, dA, dB, "partial_trace");
  if (keep == Party::B) {
    CMatrix out = CMatrix::Zero(dB, dB);
    for (int a = 0; a < dA; ++a) out += m.block(a * dB, a * dB, dB, dB);
    return out;
  }
  CMatrix out(dA, dA);
  for (int a2 = 0; a2 < dA; ++a2) {
    for (int a = 0; a < dA; ++a) out(a, a2) = m.block(a * dB, a2 * dB, dB, dB).trace();
  }
  return out;
}

CMatrix steer_to_b(const CMatrix& m, int dA, int dB, const CMatrix& opA) {
  check_bipartite(m, dA, dB, "steer_to_b");
  if (opA.rows() != dA || opA.cols() != dA) {
    throw std::invalid_argument("steer_to_b: operator dimension does not match dA");
  }
  // out(b, b') = sum_{a, a'} m((a,b), (a',b')) opA(a', a)
  CMatrix out = CMatrix::Zero(dB, dB);
  const Eigen::Index ld = m.outerStride();
  for (int a2 = 0; a2 < dA; ++a2) {
    for (int a = 0; a < dA; ++a) {
      const cplx w = opA(a2, a);
      if (w == cplx(0.0)) continue;
      const cplx* blk = m.data() + (Eigen::Index(a2) * dB) * ld + Eigen::Index(a) * dB;
      for (int b2 = 0; b2 < dB; ++b2) {
        const cplx* col = blk + b2 * ld;
        cplx* dst = out.data() + Eigen::Index(b2) * dB;
        for (int b = 0; b < dB; ++b) fma_complex(dst[b], w, col[b]);
      }
    }
  }
  return out;
}

CMatrix steer_to_a(const CMatrix& m, int dA, int dB, const CMatrix& opB) {
  check_bipartite(m, dA, dB, "steer_to_a");
  if (opB.rows() != dB || opB.cols() != dB) {
    throw std::invalid_argument("steer_to_a: operator dimension does not match dB");
  }
  // out(a, a') = tr(block(a, a') * opB) = sum_{b, b'} m((a,b), (a',b')) opB(b', b)
  CMatrix out(dA, dA);
  const CMatrix opBt = opB.transpose();
  const Eigen::Index ld = m.outerStride();
  for (int a2 = 0; a2 < dA; ++a2) {
    for (int a = 0; a < dA; ++a) {
      const cplx* blk = m.data() + (Eigen::Index(a2) * dB) * ld + Eigen::Index(a) * dB;
      cplx acc(0.0);
      for (int b2 = 0; b2 < dB; ++b2) {
        const cplx* col = blk + b2 * ld;
        const cplx* w = opBt.data() + Eigen::Index(b2) * dB;
        for (int b = 0; b < dB; ++b) fma_complex(acc, col[b], w[b]);
      }
      out(a, a2) = acc;
    }
  }
  return out;
}

cplx trace_of_product(const CMatrix& x, const CMatrix& y) {
  if (x.cols() != y.rows() || x.rows() != y.cols()) {
    throw std::invalid_argument("trace_of_product: incompatible shapes");
  }
  return x.cwiseProduct(y.transpose()).sum();
}

CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  // Fill in a fixed row-major order so the draw sequence is layout independent.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  const CMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace collbell
