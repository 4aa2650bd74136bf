#pragma once

// Alternating best-response ("see-saw") maximization of a two-outcome Bell
// functional over both parties' measurements. Each step is exact: with one
// party fixed, the other's optimal POVM elements are positive-part
// projectors of the steered operators. Results are lower bounds on the
// maximal quantum value for the given state.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "collbell/bell.hpp"
#include "collbell/states.hpp"

namespace collbell {

struct SeesawConfig {
  int restarts = 100;
  int max_iters = 500;
  double tol = 1e-10;  // absolute change in value that ends a restart
  std::uint64_t seed = 0;
  int threads = 1;  // 0 picks std::thread::hardware_concurrency()

  /// Throws std::invalid_argument unless restarts >= 1, max_iters >= 1, tol > 0.
  void validate() const;
};

struct SeesawResult {
  double value = 0.0;
  std::vector<BinaryMeasurement> alice;
  std::vector<BinaryMeasurement> bob;
  int iterations = 0;
  int restart_index = 0;
  bool converged = false;
};

/// Rank-r projector, r uniform in {1, ..., d-1}, rotated by a Haar unitary.
BinaryMeasurement random_binary_povm(int d, std::mt19937_64& rng);

std::vector<BinaryMeasurement> alice_best_response(const BipartiteDensity& rho,
                                                   std::span<const BinaryMeasurement> bob,
                                                   const BellFunctional& f);

/// Independent random stream for one restart, a pure function of (seed, restart).
std::mt19937_64 restart_stream(std::uint64_t seed, int restart_index);

/// For a pure rho and a two-setting functional: alice_scheme expressed in
/// Alice's Schmidt basis (ordered by descending Schmidt coefficient).
std::optional<std::vector<BinaryMeasurement>> schmidt_basis_scheme(const BipartiteDensity& rho,
                                                                   const BellFunctional& f);

/// One see-saw run from the given Alice measurements. Bob responds first;
/// then the parties alternate until the value changes by less than tol or
/// max_iters rounds have passed. If history is non-null it receives the
/// value after every round (starting with the initial Bob response).
SeesawResult seesaw_from(const BipartiteDensity& rho, const BellFunctional& f,
                         std::vector<BinaryMeasurement> alice_init, int max_iters, double tol,
                         std::vector<double>* history = nullptr);

/// Best value over cfg.restarts runs. Restart 0 starts from
/// schmidt_basis_scheme when available; every other start is random.
/// Ties go to the lowest restart index, so the result does not depend on
/// cfg.threads. Throws GuardExceeded if dA*dB > kMaxDensityDim.
SeesawResult seesaw_maximize(const BipartiteDensity& rho, const BellFunctional& f,
                             const SeesawConfig& cfg);

}  // namespace collbell
