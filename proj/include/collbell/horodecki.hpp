#pragma once

// Exact maximal CHSH / CH values of two-qubit states from the correlation
// matrix t_ij = tr(rho sigma_i (x) sigma_j).

#include <Eigen/Dense>

#include "collbell/states.hpp"

namespace collbell {

using CorrelationMatrix = Eigen::Matrix3d;

CorrelationMatrix correlation_matrix(const BipartiteDensity& rho);

/// 2 sqrt(M), M the sum of the two largest eigenvalues of t^T t.
double max_chsh(const BipartiteDensity& rho);

/// max_chsh / 4 - 1/2; positive iff rho violates the CH inequality.
double max_ch(const BipartiteDensity& rho);

/// Werner singlet fidelity above which CH is violated: (3/sqrt 2 + 1)/4.
double werner_threshold();

}  // namespace collbell
