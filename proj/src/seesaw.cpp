#include "collbell/seesaw.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "collbell/errors.hpp"
#include "collbell/scheme.hpp"

namespace collbell {

void SeesawConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("SeesawConfig: restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("SeesawConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("SeesawConfig: tol must be > 0");
  if (threads < 0) throw std::invalid_argument("SeesawConfig: threads must be >= 0");
}

BinaryMeasurement random_binary_povm(int d, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("random_binary_povm: d must be >= 2");
  std::uniform_int_distribution<int> rank_dist(1, d - 1);
  const int rank = rank_dist(rng);
  const CMatrix u = haar_unitary(d, rng);
  const auto cols = u.leftCols(rank);
  return BinaryMeasurement{cols * cols.adjoint()};
}

std::vector<BinaryMeasurement> alice_best_response(const BipartiteDensity& rho,
                                                   std::span<const BinaryMeasurement> bob,
                                                   const BellFunctional& f) {
  const std::vector<CMatrix> steered = alice_steered_operators(f, rho, bob);
  std::vector<BinaryMeasurement> out;
  out.reserve(steered.size());
  for (const CMatrix& e : steered) out.push_back(BinaryMeasurement{positive_part_projector(e)});
  return out;
}

std::mt19937_64 restart_stream(std::uint64_t seed, int restart_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart_index), 0x5ee5a3u};
  return std::mt19937_64(seq);
}

std::optional<std::vector<BinaryMeasurement>> schmidt_basis_scheme(const BipartiteDensity& rho,
                                                                   const BellFunctional& f) {
  if (f.sA() != 2 || !f.two_outcome() || rho.dA() < 2) return std::nullopt;
  if (purity(rho) < 1.0 - 1e-10) return std::nullopt;

  // rho = |psi><psi|, so any column j with rho_jj > 0 is psi * conj(psi_j).
  const CMatrix& m = rho.matrix();
  Eigen::Index j = 0;
  m.diagonal().real().maxCoeff(&j);
  const CVector psi = m.col(j) / std::sqrt(m(j, j).real());

  const int dA = rho.dA();
  const int dB = rho.dB();
  CMatrix coeff(dA, dB);
  for (int a = 0; a < dA; ++a) {
    for (int b = 0; b < dB; ++b) coeff(a, b) = psi(a * dB + b);
  }
  Eigen::JacobiSVD<CMatrix> svd(coeff, Eigen::ComputeFullU);
  const CMatrix& u = svd.matrixU();
  std::vector<BinaryMeasurement> alice;
  for (const BinaryMeasurement& a : alice_scheme(dA)) {
    CMatrix p = u * a.plus * u.adjoint();
    alice.push_back(BinaryMeasurement{(p + p.adjoint()) * 0.5});
  }
  return alice;
}

SeesawResult seesaw_from(const BipartiteDensity& rho, const BellFunctional& f,
                         std::vector<BinaryMeasurement> alice_init, int max_iters, double tol,
                         std::vector<double>* history) {
  SeesawResult r;
  r.alice = std::move(alice_init);
  r.bob = bob_best_response(rho, r.alice, f);
  r.value = evaluate(f, rho, r.alice, r.bob);
  if (history) history->push_back(r.value);
  for (int it = 1; it <= max_iters; ++it) {
    std::vector<BinaryMeasurement> alice = alice_best_response(rho, r.bob, f);
    std::vector<BinaryMeasurement> bob = bob_best_response(rho, alice, f);
    const double value = evaluate(f, rho, alice, bob);
    if (!std::isfinite(value)) throw NumericFailure("seesaw: non-finite value");
    if (history) history->push_back(value);
    r.iterations = it;
    const double change = value - r.value;
    // Thresholding tiny eigenvalues can cost O(tau) per step; never keep a worse point.
    if (value >= r.value) {
      r.alice = std::move(alice);
      r.bob = std::move(bob);
      r.value = value;
    }
    if (change < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

SeesawResult seesaw_maximize(const BipartiteDensity& rho, const BellFunctional& f,
                             const SeesawConfig& cfg) {
  cfg.validate();
  if (!f.two_outcome()) throw std::invalid_argument("seesaw_maximize: only two-outcome functionals are supported");
  if (std::int64_t(rho.dA()) * rho.dB() > kMaxDensityDim) {
    throw GuardExceeded("seesaw_maximize: state dimension " + std::to_string(rho.dA() * rho.dB()) +
                        " exceeds the guard of " + std::to_string(kMaxDensityDim));
  }
  if (rho.dA() < 2 || rho.dB() < 2) throw std::invalid_argument("seesaw_maximize: both local dimensions must be >= 2");

  const std::optional<std::vector<BinaryMeasurement>> analytic = schmidt_basis_scheme(rho, f);
  auto run = [&](int restart) {
    std::vector<BinaryMeasurement> init;
    if (restart == 0 && analytic) {
      init = *analytic;
    } else {
      std::mt19937_64 rng = restart_stream(cfg.seed, restart);
      for (int k = 0; k < f.sA(); ++k) init.push_back(random_binary_povm(rho.dA(), rng));
    }
    SeesawResult r = seesaw_from(rho, f, std::move(init), cfg.max_iters, cfg.tol);
    r.restart_index = restart;
    return r;
  };

  std::vector<std::optional<SeesawResult>> results(cfg.restarts);
  int threads = cfg.threads == 0 ? int(std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::clamp(threads, 1, cfg.restarts);
  if (threads == 1) {
    for (int i = 0; i < cfg.restarts; ++i) results[i] = run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int i = next++; i < cfg.restarts; i = next++) results[i] = run(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i]->value > results[best]->value) best = i;
  }
  return std::move(*results[best]);
}

}  // namespace collbell
