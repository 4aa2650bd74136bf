#include "collbell/scheme.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace collbell {

std::array<BinaryMeasurement, 2> alice_scheme(int d) {
  if (d < 2) throw std::invalid_argument("alice_scheme: d must be >= 2, got " + std::to_string(d));
  CMatrix z = CMatrix::Zero(d, d);
  CMatrix x = CMatrix::Zero(d, d);
  for (int n = 0; n + 1 < d; n += 2) {
    z(n, n) = 1.0;
    z(n + 1, n + 1) = -1.0;
    x(n, n + 1) = 1.0;
    x(n + 1, n) = 1.0;
  }
  if (d % 2 == 1) {
    z(d - 1, d - 1) = 1.0;
    x(d - 1, d - 1) = 1.0;
  }
  const CMatrix id = CMatrix::Identity(d, d);
  return {BinaryMeasurement{(id + z) * 0.5}, BinaryMeasurement{(id + x) * 0.5}};
}

std::vector<BinaryMeasurement> bob_best_response(const BipartiteDensity& rho,
                                                 std::span<const BinaryMeasurement> alice,
                                                 const BellFunctional& f) {
  const std::vector<CMatrix> steered = bob_steered_operators(f, rho, alice);
  std::vector<BinaryMeasurement> out;
  out.reserve(steered.size());
  for (const CMatrix& fl : steered) out.push_back(BinaryMeasurement{positive_part_projector(fl)});
  return out;
}

double analytic_ch_value(const SchmidtState& s) {
  const auto& c = s.coeffs();
  const std::size_t d = c.size();
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < d; n += 2) {
    const double x = c[n] * c[n];
    const double y = c[n + 1] * c[n + 1];
    sum += std::sqrt((x + y) * (x + y) + 4.0 * x * y);
  }
  if (d % 2 == 1) sum += c[d - 1] * c[d - 1];
  return 0.5 * sum - 0.5;
}

namespace {

// Also defined for d = 1, where it vanishes.
double me_value_any(double d, bool odd) {
  if (!odd) return std::numbers::sqrt2 / 2.0 - 0.5;
  return (std::numbers::sqrt2 * (d - 1.0) + 1.0) / (2.0 * d) - 0.5;
}

void check_phi(double phi, int n, const char* who) {
  if (!(phi > 0.0 && phi <= std::numbers::pi / 4.0 + 1e-15)) {
    throw std::invalid_argument(std::string(who) + ": phi must lie in (0, pi/4]");
  }
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
}

}  // namespace

double me_value(int d) {
  if (d < 2) throw std::invalid_argument("me_value: d must be >= 2");
  return me_value_any(d, d % 2 == 1);
}

double correlated_subspace_weight(double phi, int n) {
  check_phi(phi, n, "correlated_subspace_weight");
  // Unpaired weight: coefficient classes cos^(n-1-m) sin^m with odd C(n-1, m).
  const double c2 = std::cos(phi) * std::cos(phi);
  const double s2 = std::sin(phi) * std::sin(phi);
  double unpaired = 0.0;
  for (int m = 0; m < n; ++m) {
    if (binomial_is_odd(n - 1, m)) unpaired += std::pow(c2, n - 1 - m) * std::pow(s2, m);
  }
  return 1.0 - unpaired;
}

double two_qubit_ncopy_value(double phi, int n) {
  check_phi(phi, n, "two_qubit_ncopy_value");
  const double p = correlated_subspace_weight(phi, n);
  const double s = std::sin(2.0 * phi);
  return p / std::numbers::sqrt2 + 0.5 * (1.0 - p) * std::sqrt(1.0 + s * s) - 0.5;
}

double concentration_value(double phi, int n) {
  check_phi(phi, n, "concentration_value");
  const double lc = std::log(std::cos(phi));
  const double ls = std::log(std::sin(phi));
  double value = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    const double dim = std::round(std::exp(log_binom));
    const double weight = std::exp(log_binom + 2.0 * (n - m) * lc + 2.0 * m * ls);
    value += weight * me_value_any(dim, binomial_is_odd(n, m));
  }
  return value;
}

}  // namespace collbell
