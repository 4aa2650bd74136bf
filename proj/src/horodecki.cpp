#include "collbell/horodecki.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collbell {

namespace {

std::array<CMatrix, 3> paulis() {
  const cplx i(0.0, 1.0);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -i, i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {x, y, z};
}

}  // namespace

CorrelationMatrix correlation_matrix(const BipartiteDensity& rho) {
  if (rho.dA() != 2 || rho.dB() != 2) throw std::invalid_argument("correlation_matrix: requires a two-qubit state");
  static const std::array<CMatrix, 3> sigma = paulis();
  CorrelationMatrix t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      t(i, j) = trace_of_product(rho.matrix(), kron(sigma[i], sigma[j])).real();
    }
  }
  return t;
}

double max_chsh(const BipartiteDensity& rho) {
  const CorrelationMatrix t = correlation_matrix(rho);
  const CMatrix tt = (t.transpose() * t).cast<cplx>();
  const RVector ev = eig_hermitian(tt).values;
  return 2.0 * std::sqrt(std::max(ev(0) + ev(1), 0.0));
}

double max_ch(const BipartiteDensity& rho) { return max_chsh(rho) / 4.0 - 0.5; }

double werner_threshold() { return (3.0 / std::numbers::sqrt2 + 1.0) / 4.0; }

}  // namespace collbell
