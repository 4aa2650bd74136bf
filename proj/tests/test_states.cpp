#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "collbell/errors.hpp"
#include "collbell/horodecki.hpp"
#include "collbell/states.hpp"
#include "test_support.hpp"

using namespace collbell;
using Catch::Matchers::WithinAbs;

namespace {

// All n-fold products of c, enumerated one index tuple at a time.
std::vector<double> brute_force_products(const std::vector<double>& c, int n) {
  std::vector<double> out{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next;
    for (double x : out)
      for (double y : c) next.push_back(x * y);
    out = std::move(next);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

CVector singlet_vector() {
  CVector v = CVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

// rho^{(x)2} via kron, then regroup (A1 B1 A2 B2) -> (A1 A2 B1 B2) by explicit index permutation.
CMatrix two_copy_oracle(const CMatrix& rho, int dA, int dB) {
  const CMatrix big = kron(rho, rho);
  const int d = dA * dB;
  CMatrix out(d * d, d * d);
  auto regroup = [&](int idx) {
    const int first = idx / d, second = idx % d;  // copy-1 index, copy-2 index
    const int a1 = first / dB, b1 = first % dB;
    const int a2 = second / dB, b2 = second % dB;
    return ((a1 * dA + a2) * dB + b1) * dB + b2;
  };
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j) out(regroup(i), regroup(j)) = big(i, j);
  return out;
}

}  // namespace

TEST_CASE("schmidt_state: normalizes and sorts", "[states]") {
  const SchmidtState s = schmidt_state({2.0, 1.0});
  REQUIRE_THAT(s.coeffs()[0], WithinAbs(2.0 / std::sqrt(5.0), 1e-15));
  REQUIRE_THAT(s.coeffs()[1], WithinAbs(1.0 / std::sqrt(5.0), 1e-15));

  const SchmidtState u = schmidt_state({1.0, 1.0, 1.0});
  for (double c : u.coeffs()) REQUIRE_THAT(c, WithinAbs(1.0 / std::sqrt(3.0), 1e-15));

  const SchmidtState t = schmidt_state({1.0, 2.0, 3.0, 3.0});
  const double n = std::sqrt(23.0);
  REQUIRE(t.dim() == 4);
  REQUIRE_THAT(t.coeffs()[0], WithinAbs(3.0 / n, 1e-15));
  REQUIRE_THAT(t.coeffs()[1], WithinAbs(3.0 / n, 1e-15));
  REQUIRE_THAT(t.coeffs()[2], WithinAbs(2.0 / n, 1e-15));
  REQUIRE_THAT(t.coeffs()[3], WithinAbs(1.0 / n, 1e-15));
}

TEST_CASE("schmidt_state: rejects bad coefficients", "[states]") {
  REQUIRE_THROWS_AS(schmidt_state(std::span<const double>{}), std::invalid_argument);
  REQUIRE_THROWS_AS(schmidt_state({0.0, 0.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(schmidt_state({1.0, -0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(schmidt_state({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  REQUIRE_THROWS_AS(schmidt_state({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST_CASE("to_density: rank one with the right entries", "[states]") {
  const BipartiteDensity rho = to_density(schmidt_state({1.0, 1.0}));
  REQUIRE(rho.dA() == 2);
  REQUIRE(rho.dB() == 2);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  REQUIRE((rho.matrix() - expected).norm() < 1e-15);

  const BipartiteDensity r3 = to_density(schmidt_state({1.0, 2.0, 3.0}));
  REQUIRE(r3.dim() == 9);
  REQUIRE_THAT(purity(r3), WithinAbs(1.0, 1e-12));
}

TEST_CASE("BipartiteDensity::from_matrix validation", "[states]") {
  REQUIRE_THROWS_AS(BipartiteDensity::from_matrix(CMatrix::Identity(4, 4), 2, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(BipartiteDensity::from_matrix(CMatrix::Identity(3, 3) / 3.0, 2, 2), std::invalid_argument);
  CMatrix neg = CMatrix::Zero(4, 4);
  neg.diagonal() << 0.6, 0.6, 0.1, -0.3;
  REQUIRE_THROWS_AS(BipartiteDensity::from_matrix(neg, 2, 2), std::invalid_argument);
  CMatrix nonherm = CMatrix::Identity(4, 4) / 4.0;
  nonherm(0, 1) = 0.1;
  REQUIRE_THROWS_AS(BipartiteDensity::from_matrix(nonherm, 2, 2), std::invalid_argument);
  REQUIRE_NOTHROW(BipartiteDensity::from_matrix(CMatrix::Identity(6, 6) / 6.0, 2, 3));
}

TEST_CASE("tensor_power_schmidt: examples", "[states]") {
  const SchmidtState me = tensor_power_schmidt(schmidt_state({1.0, 1.0}), 2);
  REQUIRE(me.dim() == 4);
  for (double c : me.coeffs()) REQUIRE_THAT(c, WithinAbs(0.5, 1e-15));

  const SchmidtState s21 = tensor_power_schmidt(schmidt_state({2.0, 1.0}), 2);
  const double expected[] = {4.0 / 5.0, 2.0 / 5.0, 2.0 / 5.0, 1.0 / 5.0};
  for (int i = 0; i < 4; ++i) REQUIRE_THAT(s21.coeffs()[i], WithinAbs(expected[i], 1e-15));

  const SchmidtState base = schmidt_state({1.0, 2.0, 3.0});
  const SchmidtState once = tensor_power_schmidt(base, 1);
  for (int i = 0; i < 3; ++i) REQUIRE_THAT(once.coeffs()[i], WithinAbs(base.coeffs()[i], 1e-15));

  REQUIRE_THROWS_AS(tensor_power_schmidt(base, 0), std::invalid_argument);
  // 2^25 > 2e7
  REQUIRE_THROWS_AS(tensor_power_schmidt(schmidt_state({2.0, 1.0}), 25), GuardExceeded);
}

TEST_CASE("tensor_power_schmidt: agrees with brute-force enumeration", "[states][property]") {
  const std::vector<std::vector<double>> cases = {{1, 2, 3, 4}, {1, 2, 3, 3}, {2, 1}, {1, 1, 1, 1, 1}, {5, 1, 0.5}};
  for (const auto& raw : cases) {
    const SchmidtState s = schmidt_state(raw);
    for (int n = 1; n <= 5; ++n) {
      if (std::pow(double(raw.size()), n) > 5000) continue;
      const std::vector<double> oracle = brute_force_products(s.coeffs(), n);
      const SchmidtState t = tensor_power_schmidt(s, n);
      REQUIRE(t.dim() == int(oracle.size()));
      double norm2 = 0.0;
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        REQUIRE_THAT(t.coeffs()[i], WithinAbs(oracle[i], 1e-14));
        norm2 += t.coeffs()[i] * t.coeffs()[i];
      }
      REQUIRE_THAT(norm2, WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("tensor_power_density: examples and the explicit regrouping", "[states]") {
  const BipartiteDensity w = werner(0.9);
  REQUIRE((tensor_power_density(w, 1).matrix() - w.matrix()).norm() == 0.0);

  // |00><00| twice -> |0000><0000|
  CMatrix p00 = CMatrix::Zero(4, 4);
  p00(0, 0) = 1.0;
  const BipartiteDensity two = tensor_power_density(BipartiteDensity::from_matrix(p00, 2, 2), 2);
  REQUIRE(two.dA() == 4);
  REQUIRE(two.dB() == 4);
  REQUIRE_THAT(two.matrix()(0, 0).real(), WithinAbs(1.0, 0.0));
  REQUIRE_THAT(two.matrix().norm(), WithinAbs(1.0, 1e-15));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const BipartiteDensity rho = testing::random_density(2, 3, rng);
    const BipartiteDensity sq = tensor_power_density(rho, 2);
    REQUIRE(sq.dA() == 4);
    REQUIRE(sq.dB() == 9);
    REQUIRE((sq.matrix() - two_copy_oracle(rho.matrix(), 2, 3)).norm() < 1e-14);
  }
}

TEST_CASE("tensor_power_density: pure input matches the Schmidt power", "[states]") {
  const SchmidtState s = schmidt_state({2.0, 1.0});
  const BipartiteDensity a = tensor_power_density(to_density(s), 2);
  // Schmidt form of |psi>|psi> in (A1 A2)(B1 B2) ordering is sum c_i c_j |ij>|ij>.
  CVector v = CVector::Zero(16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v((i * 2 + j) * 4 + (i * 2 + j)) = s.coeffs()[i] * s.coeffs()[j];
  REQUIRE((a.matrix() - v * v.adjoint()).norm() < 1e-15);
}

TEST_CASE("tensor_power_density: guard", "[states]") {
  const BipartiteDensity w = werner(0.9);
  REQUIRE_THROWS_AS(tensor_power_density(w, 7), GuardExceeded);  // 4^7 = 16384 > 4096
  REQUIRE_NOTHROW(tensor_power_density(w, 3));
  REQUIRE_THROWS_AS(tensor_power_density(w, 3, 32), GuardExceeded);
  REQUIRE_THROWS_AS(tensor_power_density(w, 0), std::invalid_argument);
}

TEST_CASE("werner: endpoints, fidelity and range", "[states]") {
  const CVector psi = singlet_vector();
  REQUIRE((werner(1.0).matrix() - psi * psi.adjoint()).norm() < 1e-15);
  REQUIRE((werner(0.25).matrix() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
  for (double p : {0.25, 0.5, 0.78, 0.9, 1.0}) {
    const BipartiteDensity w = werner(p);
    REQUIRE_THAT(w.matrix().trace().real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT((psi.adjoint() * w.matrix() * psi)(0, 0).real(), WithinAbs(p, 1e-15));
    // spectrum {p, (1-p)/3 x3} gives tr rho^2 = p^2 + (1-p)^2/3
    REQUIRE_THAT(purity(w), WithinAbs(p * p + (1 - p) * (1 - p) / 3.0, 1e-14));
  }
  REQUIRE_THROWS_AS(werner(0.2), std::invalid_argument);
  REQUIRE_THROWS_AS(werner(1.01), std::invalid_argument);
  REQUIRE_NOTHROW(werner(werner_threshold()));
}

TEST_CASE("werner: CH violated exactly above the threshold", "[states][property]") {
  const double pw = werner_threshold();
  for (int i = 0; i <= 100; ++i) {
    const double p = 0.25 + 0.75 * i / 100.0;
    if (std::abs(p - pw) < 1e-9) continue;
    REQUIRE((max_ch(werner(p)) > 0.0) == (p > pw));
  }
}

TEST_CASE("isotropic: endpoints, fidelity, d = 2 relation to Werner", "[states]") {
  const BipartiteDensity iso = isotropic(3, 1.0);
  REQUIRE((iso.matrix() - to_density(schmidt_state({1.0, 1.0, 1.0})).matrix()).norm() < 1e-15);
  REQUIRE((isotropic(3, 0.0).matrix() - CMatrix::Identity(9, 9) / 9.0).norm() < 1e-15);

  const CMatrix me = to_density(schmidt_state({1.0, 1.0, 1.0, 1.0})).matrix();
  for (double p : {-1.0 / 15.0, 0.0, 0.3, 0.8, 1.0}) {
    const BipartiteDensity r = isotropic(4, p);
    REQUIRE_THAT((r.matrix() * me).trace().real(), WithinAbs(p + (1 - p) / 16.0, 1e-14));
  }

  // Up to a local unitary on Bob, isotropic(2, p) is the Werner state of fidelity (3p + 1)/4.
  for (double p : {0.0, 0.5, 0.9}) {
    const RVector a = eig_hermitian(isotropic(2, p).matrix()).values;
    const RVector b = eig_hermitian(werner((3 * p + 1) / 4).matrix()).values;
    REQUIRE((a - b).norm() < 1e-14);
  }
  REQUIRE_THROWS_AS(isotropic(1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(isotropic(3, -0.2), std::invalid_argument);
  REQUIRE_THROWS_AS(isotropic(3, 1.1), std::invalid_argument);
}

TEST_CASE("random_two_qubit: valid states, seed-deterministic", "[states]") {
  std::mt19937_64 r1(42), r2(42), r3(43);
  const BipartiteDensity a = random_two_qubit(r1);
  REQUIRE(a.matrix() == random_two_qubit(r2).matrix());
  REQUIRE(a.matrix() != random_two_qubit(r3).matrix());

  // Hilbert-Schmidt measure on 4x4 densities: E[tr rho^2] = 2N/(N^2 + 1) = 8/17.
  std::mt19937_64 rng(1);
  double mean_purity = 0.0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const BipartiteDensity r = random_two_qubit(rng);
    REQUIRE(eig_hermitian(r.matrix()).values(3) >= -1e-12);
    mean_purity += purity(r) / samples;
  }
  REQUIRE_THAT(mean_purity, WithinAbs(8.0 / 17.0, 0.005));
}

TEST_CASE("random_pure_qudit: uniform raw coefficients", "[states]") {
  std::mt19937_64 r1(5), r2(5);
  const SchmidtState s = random_pure_qudit(6, r1);
  REQUIRE(s.dim() == 6);
  double norm2 = 0.0;
  for (double c : s.coeffs()) norm2 += c * c;
  REQUIRE_THAT(norm2, WithinAbs(1.0, 1e-14));
  // Same stream drawn directly: the raw values are uniform(0,1) draws.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> raw(6);
  for (double& x : raw) x = unit(r2);
  const SchmidtState t = schmidt_state(raw);
  for (int i = 0; i < 6; ++i) REQUIRE_THAT(s.coeffs()[i], WithinAbs(t.coeffs()[i], 1e-15));
  REQUIRE_THROWS_AS(random_pure_qudit(1, r1), std::invalid_argument);
}

TEST_CASE("concurrence: examples", "[states]") {
  REQUIRE_THAT(concurrence(werner(1.0)), WithinAbs(1.0, 1e-10));
  REQUIRE_THAT(concurrence(werner(0.9)), WithinAbs(0.8, 1e-10));
  REQUIRE_THAT(concurrence(werner(0.5)), WithinAbs(0.0, 1e-10));
  CMatrix p00 = CMatrix::Zero(4, 4);
  p00(0, 0) = 1.0;
  REQUIRE_THAT(concurrence(BipartiteDensity::from_matrix(p00, 2, 2)), WithinAbs(0.0, 1e-10));
  // pure cos|00> + sin|11> has C = sin 2 phi
  const double phi = 0.3;
  REQUIRE_THAT(concurrence(to_density(schmidt_state({std::cos(phi), std::sin(phi)}))),
               WithinAbs(std::sin(2 * phi), 1e-7));
  REQUIRE_THROWS_AS(concurrence(isotropic(3, 0.5)), std::invalid_argument);
}

TEST_CASE("concurrence: Wootters eigenvalues of rho rho~ via a general eigensolver", "[states][property]") {
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteDensity rho = random_two_qubit(rng);
    const CMatrix tilde = yy * rho.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> ces(rho.matrix() * tilde);
    std::vector<double> lam;
    for (int i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, ces.eigenvalues()(i).real())));
    std::sort(lam.rbegin(), lam.rend());
    const double oracle = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
    REQUIRE_THAT(concurrence(rho), WithinAbs(oracle, 1e-6));
  }
}

TEST_CASE("linear_entropy and purity", "[states]") {
  REQUIRE_THAT(linear_entropy(werner(1.0)), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(linear_entropy(werner(0.25)), WithinAbs(1.0, 1e-14));
  const double p = 0.9;
  REQUIRE_THAT(linear_entropy(werner(p)), WithinAbs(4.0 / 3.0 * (1 - p * p - (1 - p) * (1 - p) / 3.0), 1e-14));
  REQUIRE_THROWS_AS(linear_entropy(isotropic(3, 0.5)), std::invalid_argument);
}

TEST_CASE("local-unitary invariants", "[states][property]") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteDensity rho = random_two_qubit(rng);
    const BipartiteDensity rot = testing::local_unitary_rotate(rho, rng);
    REQUIRE_THAT(concurrence(rot), WithinAbs(concurrence(rho), 1e-7));
    REQUIRE_THAT(linear_entropy(rot), WithinAbs(linear_entropy(rho), 1e-12));
    REQUIRE_THAT(max_ch(rot), WithinAbs(max_ch(rho), 1e-10));
  }
}
