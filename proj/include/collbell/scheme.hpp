#pragma once

// Pairing measurement scheme for pure bipartite states and the closed-form
// CH values it achieves, for single copies and for N-copy collective
// measurements.

#include <array>
#include <span>
#include <vector>

#include "collbell/bell.hpp"
#include "collbell/states.hpp"

namespace collbell {

/// Alice's two settings, A1+ = (1 + Z)/2 and A2+ = (1 + X)/2, where Z and X
/// are direct sums of floor(d/2) Pauli z / x blocks plus a trailing 1x1 block
/// equal to 1 when d is odd.
std::array<BinaryMeasurement, 2> alice_scheme(int d);

/// Bob's optimal two-outcome measurements for fixed Alice measurements: each
/// designated element is the projector onto the positive part of his steered
/// operator.
std::vector<BinaryMeasurement> bob_best_response(const BipartiteDensity& rho,
                                                 std::span<const BinaryMeasurement> alice,
                                                 const BellFunctional& f);

/// CH value of alice_scheme + Bob's best response on sum_i c_i |ii>:
///   1/2 sum_n sqrt((c_{2n-1}^2 + c_{2n}^2)^2 + 4 c_{2n-1}^2 c_{2n}^2)
///   + (d mod 2)/2 c_d^2 - 1/2.
double analytic_ch_value(const SchmidtState& s);

/// analytic_ch_value of the d-dimensional maximally entangled state.
double me_value(int d);

/// analytic_ch_value of (cos phi |00> + sin phi |11>)^{(x)n}, evaluated in
/// closed form through the weight p of the perfectly correlated subspaces.
double two_qubit_ncopy_value(double phi, int n);

/// Weight p of the perfectly correlated two-dimensional subspaces after
/// sorting the Schmidt coefficients of n copies.
double correlated_subspace_weight(double phi, int n);

/// CH value reached by first projecting onto equal-coefficient type classes
/// (entanglement concentration) and measuring the resulting maximally
/// entangled state of dimension C(n, m) with the pairing scheme.
double concentration_value(double phi, int n);

/// C(n, m) is odd iff m and n - m share no set bits.
constexpr bool binomial_is_odd(unsigned long long n, unsigned long long m) {
  return m <= n && (m & (n - m)) == 0;
}

}  // namespace collbell
