#include "collbell/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "collbell/errors.hpp"

namespace collbell {

SchmidtState schmidt_state(std::span<const double> raw) {
  if (raw.empty()) throw std::invalid_argument("schmidt_state: empty coefficient vector");
  long double norm2 = 0.0L;
  for (double c : raw) {
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument("schmidt_state: coefficients must be finite and non-negative");
    }
    norm2 += static_cast<long double>(c) * c;
  }
  if (norm2 == 0.0L) throw std::invalid_argument("schmidt_state: all coefficients are zero");
  const double inv = static_cast<double>(1.0L / std::sqrt(norm2));
  std::vector<double> c(raw.begin(), raw.end());
  for (double& x : c) x *= inv;
  std::sort(c.begin(), c.end(), std::greater<>());
  return SchmidtState(std::move(c));
}

BipartiteDensity BipartiteDensity::from_matrix(CMatrix rho, int dA, int dB) {
  if (dA < 1 || dB < 1) throw std::invalid_argument("BipartiteDensity: local dimensions must be positive");
  const Eigen::Index n = Eigen::Index(dA) * dB;
  if (rho.rows() != n || rho.cols() != n) {
    throw std::invalid_argument("BipartiteDensity: matrix is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", expected " + std::to_string(n) +
                                "x" + std::to_string(n));
  }
  if (!rho.allFinite()) throw std::invalid_argument("BipartiteDensity: non-finite entries");
  if (!is_hermitian(rho)) throw std::invalid_argument("BipartiteDensity: matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-12) {
    throw std::invalid_argument("BipartiteDensity: trace differs from 1");
  }
  const EigDecomposition eig = eig_hermitian(rho);
  if (eig.values(n - 1) < -1e-10) {
    throw std::invalid_argument("BipartiteDensity: matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(eig.values(n - 1)) + ")");
  }
  return BipartiteDensity(std::move(rho), dA, dB);
}

BipartiteDensity to_density(const SchmidtState& s) {
  const int d = s.dim();
  CVector psi = CVector::Zero(Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = s.coeffs()[i];
  return BipartiteDensity::from_matrix(psi * psi.adjoint(), d, d);
}

SchmidtState tensor_power_schmidt(const SchmidtState& s, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power_schmidt: n must be >= 1");
  const int d = s.dim();
  if (n * std::log(static_cast<double>(d)) > std::log(static_cast<double>(kMaxSchmidtCoefficients)) + 1e-12) {
    throw GuardExceeded("tensor_power_schmidt: " + std::to_string(d) + "^" + std::to_string(n) +
                        " coefficients exceed the guard of " + std::to_string(kMaxSchmidtCoefficients));
  }
  if (n == 1) return s;

  // Group equal coefficients; each product is then labelled by how many
  // factors come from each group, and appears with multinomial multiplicity.
  std::vector<double> values;
  std::vector<std::uint64_t> mult;
  for (double c : s.coeffs()) {
    if (!values.empty() && values.back() == c) {
      ++mult.back();
    } else {
      values.push_back(c);
      mult.push_back(1);
    }
  }
  const int k = static_cast<int>(values.size());

  auto binomial = [](int top, int bottom) {
    std::uint64_t c = 1;
    for (int i = 0; i < bottom; ++i) c = c * std::uint64_t(top - i) / std::uint64_t(i + 1);
    return c;
  };

  struct Term {
    double value;
    std::uint64_t count;
  };
  std::vector<Term> terms;
  std::vector<int> parts(k, 0);
  std::function<void(int, int)> rec = [&](int group, int left) {
    if (group == k - 1) {
      parts[group] = left;
      double value = 1.0;
      std::uint64_t count = 1;
      int remaining = n;
      for (int g = 0; g < k; ++g) {
        count *= binomial(remaining, parts[g]);
        remaining -= parts[g];
        for (int r = 0; r < parts[g]; ++r) {
          value *= values[g];
          count *= mult[g];
        }
      }
      terms.push_back({value, count});
      return;
    }
    for (int take = left; take >= 0; --take) {
      parts[group] = take;
      rec(group + 1, left - take);
    }
  };
  rec(0, n);

  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& x, const Term& y) { return x.value > y.value; });
  long double norm2 = 0.0L;
  std::size_t total = 0;
  for (const Term& t : terms) {
    norm2 += static_cast<long double>(t.count) * t.value * t.value;
    total += t.count;
  }
  const double inv = static_cast<double>(1.0L / std::sqrt(norm2));
  std::vector<double> out;
  out.reserve(total);
  for (const Term& t : terms) out.insert(out.end(), t.count, t.value * inv);
  return SchmidtState(std::move(out));
}

BipartiteDensity tensor_power_density(const BipartiteDensity& rho, int n, std::int64_t max_dim) {
  if (n < 1) throw std::invalid_argument("tensor_power_density: n must be >= 1");
  const int dA = rho.dA();
  const int dB = rho.dB();
  std::int64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= std::int64_t(dA) * dB;
    if (dim > max_dim) {
      throw GuardExceeded("tensor_power_density: dimension (" + std::to_string(dA * dB) + ")^" +
                          std::to_string(n) + " exceeds the guard of " + std::to_string(max_dim));
    }
  }
  if (n == 1) return rho;

  std::int64_t dAn = 1, dBn = 1;
  for (int i = 0; i < n; ++i) {
    dAn *= dA;
    dBn *= dB;
  }
  // For each regrouped index (a1..an)(b1..bn), the per-copy index a_i*dB + b_i.
  std::vector<int> copy_index(static_cast<std::size_t>(dim) * n);
  for (std::int64_t A = 0; A < dAn; ++A) {
    for (std::int64_t B = 0; B < dBn; ++B) {
      const std::int64_t r = A * dBn + B;
      std::int64_t ra = A, rb = B;
      for (int i = n - 1; i >= 0; --i) {
        copy_index[r * n + i] = static_cast<int>((ra % dA) * dB + rb % dB);
        ra /= dA;
        rb /= dB;
      }
    }
  }
  const CMatrix& m = rho.matrix();
  CMatrix out(dim, dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    const int* ci = &copy_index[c * n];
    for (std::int64_t r = 0; r < dim; ++r) {
      const int* ri = &copy_index[r * n];
      cplx v = m(ri[0], ci[0]);
      for (int i = 1; i < n; ++i) v *= m(ri[i], ci[i]);
      out(r, c) = v;
    }
  }
  // Positivity and unit trace are inherited from rho, so the full spectral
  // check of from_matrix is skipped here.
  return BipartiteDensity(std::move(out), static_cast<int>(dAn), static_cast<int>(dBn));
}

BipartiteDensity werner(double p) {
  if (!(p >= 0.25 && p <= 1.0)) {
    throw std::invalid_argument("werner: p must lie in [1/4, 1], got " + std::to_string(p));
  }
  CVector singlet = CVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  CMatrix rho = CMatrix::Identity(4, 4) * ((1.0 - p) / 3.0) +
                ((4.0 * p - 1.0) / 3.0) * (singlet * singlet.adjoint());
  return BipartiteDensity::from_matrix(std::move(rho), 2, 2);
}

BipartiteDensity isotropic(int d, double p) {
  if (d < 2) throw std::invalid_argument("isotropic: d must be >= 2");
  const double d2 = double(d) * d;
  if (!(p >= -1.0 / (d2 - 1.0) && p <= 1.0)) {
    throw std::invalid_argument("isotropic: p must lie in [-1/(d^2-1), 1], got " + std::to_string(p));
  }
  CVector me = CVector::Zero(Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i) me(i * d + i) = 1.0 / std::sqrt(double(d));
  CMatrix rho = p * (me * me.adjoint()) + CMatrix::Identity(d * d, d * d) * ((1.0 - p) / d2);
  return BipartiteDensity::from_matrix(std::move(rho), d, d);
}

BipartiteDensity random_two_qubit(std::mt19937_64& rng) {
  const CMatrix g = ginibre(4, 4, rng);
  CMatrix rho = g * g.adjoint();
  rho = (rho + rho.adjoint()) * 0.5;
  rho /= rho.trace().real();
  return BipartiteDensity::from_matrix(std::move(rho), 2, 2);
}

SchmidtState random_pure_qudit(int d, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("random_pure_qudit: d must be >= 2");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> raw(d);
  for (double& c : raw) {
    do {
      c = unit(rng);
    } while (c == 0.0);
  }
  return schmidt_state(raw);
}

namespace {

void require_two_qubit(const BipartiteDensity& rho, const char* who) {
  if (rho.dA() != 2 || rho.dB() != 2) {
    throw std::invalid_argument(std::string(who) + ": requires a two-qubit state");
  }
}

}  // namespace

double concurrence(const BipartiteDensity& rho) {
  require_two_qubit(rho, "concurrence");
  // sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix& m = rho.matrix();
  const CMatrix flipped = yy * m.conjugate() * yy;

  // The eigenvalues of rho * flipped equal those of sqrt(rho) flipped sqrt(rho).
  const EigDecomposition e = eig_hermitian(m);
  RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  const CMatrix sqrt_rho = e.vectors * root.asDiagonal() * e.vectors.adjoint();
  CMatrix r = sqrt_rho * flipped * sqrt_rho;
  r = (r + r.adjoint()) * 0.5;
  const RVector mu = eig_hermitian(r).values;
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(mu(i), 0.0));
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

double purity(const BipartiteDensity& rho) { return rho.matrix().squaredNorm(); }

double linear_entropy(const BipartiteDensity& rho) {
  require_two_qubit(rho, "linear_entropy");
  return std::clamp(4.0 / 3.0 * (1.0 - purity(rho)), 0.0, 1.0);
}

}  // namespace collbell
