#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "collbell/linalg.hpp"

namespace collbell {

/// Pure bipartite state sum_i c_i |i>|i> stored by its Schmidt coefficients,
/// sorted descending and normalized (sum c_i^2 = 1).
class SchmidtState {
 public:
  const std::vector<double>& coeffs() const { return coeffs_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }

 private:
  explicit SchmidtState(std::vector<double> c) : coeffs_(std::move(c)) {}
  std::vector<double> coeffs_;

  friend SchmidtState schmidt_state(std::span<const double> raw);
  friend SchmidtState tensor_power_schmidt(const SchmidtState& s, int n);
};

/// Normalizes and sorts raw (unnormalized) Schmidt coefficients.
/// Throws std::invalid_argument for empty, negative, non-finite or all-zero input.
SchmidtState schmidt_state(std::span<const double> raw);
inline SchmidtState schmidt_state(std::initializer_list<double> raw) {
  return schmidt_state(std::span<const double>(raw.begin(), raw.size()));
}

/// Density matrix on C^dA (x) C^dB. Construction validates Hermiticity
/// (1e-12), unit trace (1e-12) and positivity (min eigenvalue >= -1e-10).
class BipartiteDensity {
 public:
  static BipartiteDensity from_matrix(CMatrix rho, int dA, int dB);

  int dA() const { return dA_; }
  int dB() const { return dB_; }
  int dim() const { return dA_ * dB_; }
  const CMatrix& matrix() const { return rho_; }

 private:
  BipartiteDensity(CMatrix rho, int dA, int dB) : rho_(std::move(rho)), dA_(dA), dB_(dB) {}
  CMatrix rho_;
  int dA_ = 0;
  int dB_ = 0;

  friend BipartiteDensity tensor_power_density(const BipartiteDensity& rho, int n,
                                               std::int64_t max_dim);
};

inline constexpr std::int64_t kMaxSchmidtCoefficients = 20'000'000;
inline constexpr std::int64_t kMaxDensityDim = 4096;

/// Rank-one density of sum_i c_i |ii>, local dimension d on both sides.
BipartiteDensity to_density(const SchmidtState& s);

/// Schmidt coefficients of |psi>^{(x)n}: all n-fold products, sorted
/// descending. Throws GuardExceeded when d^n > kMaxSchmidtCoefficients.
SchmidtState tensor_power_schmidt(const SchmidtState& s, int n);

/// rho^{(x)n} with subsystems regrouped as (A1..An) (x) (B1..Bn).
/// Throws GuardExceeded when (dA*dB)^n > max_dim.
BipartiteDensity tensor_power_density(const BipartiteDensity& rho, int n,
                                      std::int64_t max_dim = kMaxDensityDim);

/// Two-qubit Werner state with singlet fidelity p, 1/4 <= p <= 1:
/// (1-p) 1/3 + (4p-1)/3 |psi-><psi-|.
BipartiteDensity werner(double p);

/// p |ME_d><ME_d| + (1-p) 1/d^2, with -1/(d^2-1) <= p <= 1.
BipartiteDensity isotropic(int d, double p);

/// Hilbert-Schmidt random two-qubit state G G^dagger / tr(G G^dagger).
BipartiteDensity random_two_qubit(std::mt19937_64& rng);

/// Unnormalized Schmidt coefficients drawn uniformly from (0, 1).
SchmidtState random_pure_qudit(int d, std::mt19937_64& rng);

/// Wootters concurrence of a two-qubit state.
double concurrence(const BipartiteDensity& rho);

/// Normalized linear entropy (4/3)(1 - tr rho^2) of a two-qubit state.
double linear_entropy(const BipartiteDensity& rho);

double purity(const BipartiteDensity& rho);

}  // namespace collbell
