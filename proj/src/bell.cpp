#include "collbell/bell.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "collbell/errors.hpp"

namespace collbell {

BellFunctional::Builder::Builder(std::string name, int sA, int sB, int oA, int oB)
    : name_(std::move(name)), sA_(sA), sB_(sB), oA_(oA), oB_(oB) {
  if (sA < 1 || sB < 1 || oA < 2 || oB < 2) {
    throw std::invalid_argument("BellFunctional: need at least one setting and two outcomes per party");
  }
  joint_.assign(std::size_t(oA) * oB * sA * sB, 0.0);
  margA_.assign(std::size_t(oA) * sA, 0.0);
  margB_.assign(std::size_t(oB) * sB, 0.0);
}

namespace {

void check_index(int v, int bound, const char* what) {
  if (v < 0 || v >= bound) {
    throw std::invalid_argument(std::string("BellFunctional: ") + what + " index " + std::to_string(v) +
                                " out of range [0, " + std::to_string(bound) + ")");
  }
}

void check_coefficient(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("BellFunctional: non-finite coefficient");
}

}  // namespace

BellFunctional::Builder& BellFunctional::Builder::joint(int a, int b, int k, int l, double c) {
  check_index(a, oA_, "Alice outcome");
  check_index(b, oB_, "Bob outcome");
  check_index(k, sA_, "Alice setting");
  check_index(l, sB_, "Bob setting");
  check_coefficient(c);
  joint_[((std::size_t(a) * oB_ + b) * sA_ + k) * sB_ + l] += c;
  return *this;
}

BellFunctional::Builder& BellFunctional::Builder::margA(int a, int k, double c) {
  check_index(a, oA_, "Alice outcome");
  check_index(k, sA_, "Alice setting");
  check_coefficient(c);
  margA_[std::size_t(a) * sA_ + k] += c;
  return *this;
}

BellFunctional::Builder& BellFunctional::Builder::margB(int b, int l, double c) {
  check_index(b, oB_, "Bob outcome");
  check_index(l, sB_, "Bob setting");
  check_coefficient(c);
  margB_[std::size_t(b) * sB_ + l] += c;
  return *this;
}

BellFunctional BellFunctional::Builder::finalize() && { return BellFunctional(std::move(*this)); }

BellFunctional::BellFunctional(Builder&& b)
    : name_(std::move(b.name_)),
      sA_(b.sA_),
      sB_(b.sB_),
      oA_(b.oA_),
      oB_(b.oB_),
      joint_(std::move(b.joint_)),
      margA_(std::move(b.margA_)),
      margB_(std::move(b.margB_)) {
  lhv_bound_ = lhv_bound_bruteforce(*this);
}

BinaryMeasurement make_measurement(CMatrix plus) {
  if (plus.rows() != plus.cols() || plus.rows() < 1) {
    throw std::invalid_argument("make_measurement: POVM element must be square");
  }
  if (!is_hermitian(plus, 1e-10)) throw std::invalid_argument("make_measurement: POVM element is not Hermitian");
  const RVector ev = eig_hermitian(plus).values;
  if (ev(0) > 1.0 + 1e-10 || ev(ev.size() - 1) < -1e-10) {
    throw std::invalid_argument("make_measurement: POVM element must satisfy 0 <= M <= 1");
  }
  return BinaryMeasurement{std::move(plus)};
}

BellFunctional ch() {
  constexpr int plus = 0;
  constexpr int minus = 1;
  BellFunctional::Builder b("CH", 2, 2);
  b.joint(plus, minus, 0, 0, 1.0)
      .joint(plus, minus, 0, 1, 1.0)
      .joint(plus, minus, 1, 0, 1.0)
      .joint(plus, minus, 1, 1, -1.0)
      .margA(plus, 0, -1.0)
      .margB(minus, 0, -1.0);
  return std::move(b).finalize();
}

BellFunctional i3322() {
  BellFunctional::Builder b("I3322", 3, 3);
  for (auto [k, l] : {std::pair{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}) b.joint(0, 0, k, l, 1.0);
  b.joint(0, 0, 1, 2, -1.0).joint(0, 0, 2, 1, -1.0);
  b.margA(0, 0, -1.0).margB(0, 0, -2.0).margB(0, 1, -1.0);
  BellFunctional f = std::move(b).finalize();
  if (f.lhv_bound() != 0.0) {
    throw NumericFailure("i3322: enumerated LHV bound is " + std::to_string(f.lhv_bound()) + ", expected 0");
  }
  return f;
}

BellFunctional chsh() {
  // E_kl = sum_ab (-1)^(a+b) p(ab|kl); Bob's outcomes are flipped relative to
  // the textbook form to line up with the (+,-) convention of ch().
  BellFunctional::Builder b("CHSH", 2, 2);
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const double s = (k == 1 && l == 1) ? -1.0 : 1.0;
      for (int a = 0; a < 2; ++a) {
        for (int o = 0; o < 2; ++o) b.joint(a, o, k, l, -s * ((a + o) % 2 == 0 ? 1.0 : -1.0));
      }
    }
  }
  return std::move(b).finalize();
}

double lhv_bound_bruteforce(const BellFunctional& f) {
  constexpr double kLimit = 1e6;
  const double count = std::pow(double(f.oA()), f.sA()) * std::pow(double(f.oB()), f.sB());
  if (count > kLimit) {
    throw GuardExceeded("lhv_bound_bruteforce: " + std::to_string(count) +
                        " deterministic strategies exceed the limit of 1e6");
  }
  // Odometer over Alice's and Bob's outcome assignments.
  std::vector<int> a(f.sA(), 0), b(f.sB(), 0);
  auto advance = [](std::vector<int>& digits, int base) {
    for (int& d : digits) {
      if (++d < base) return true;
      d = 0;
    }
    return false;
  };
  double best = -std::numeric_limits<double>::infinity();
  do {
    double alice_only = 0.0;
    for (int k = 0; k < f.sA(); ++k) alice_only += f.margA(a[k], k);
    std::fill(b.begin(), b.end(), 0);
    do {
      double v = alice_only;
      for (int l = 0; l < f.sB(); ++l) {
        v += f.margB(b[l], l);
        for (int k = 0; k < f.sA(); ++k) v += f.joint(a[k], b[l], k, l);
      }
      best = std::max(best, v);
    } while (advance(b, f.oB()));
  } while (advance(a, f.oA()));
  return best;
}

namespace {

void check_measurements(const BellFunctional& f, std::span<const BinaryMeasurement> alice,
                        std::span<const BinaryMeasurement> bob, int dA, int dB, const char* who) {
  if (!f.two_outcome()) {
    throw std::invalid_argument(std::string(who) + ": only two-outcome functionals are supported");
  }
  if (int(alice.size()) != f.sA() || int(bob.size()) != f.sB()) {
    throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(f.sA()) + " Alice and " +
                                std::to_string(f.sB()) + " Bob measurements");
  }
  for (const auto& m : alice) {
    if (m.plus.rows() != dA || m.plus.cols() != dA) {
      throw std::invalid_argument(std::string(who) + ": Alice measurement has the wrong dimension");
    }
  }
  for (const auto& m : bob) {
    if (m.plus.rows() != dB || m.plus.cols() != dB) {
      throw std::invalid_argument(std::string(who) + ": Bob measurement has the wrong dimension");
    }
  }
}

}  // namespace

CMatrix bell_operator(const BellFunctional& f, std::span<const BinaryMeasurement> alice,
                      std::span<const BinaryMeasurement> bob) {
  if (alice.empty() || bob.empty()) throw std::invalid_argument("bell_operator: empty measurement list");
  const int dA = alice[0].dim();
  const int dB = bob[0].dim();
  check_measurements(f, alice, bob, dA, dB, "bell_operator");
  const CMatrix idA = CMatrix::Identity(dA, dA);
  const CMatrix idB = CMatrix::Identity(dB, dB);

  CMatrix op = CMatrix::Zero(dA * dB, dA * dB);
  for (int k = 0; k < f.sA(); ++k) {
    for (int a = 0; a < 2; ++a) {
      const CMatrix elemA = alice[k].element(a);
      if (f.margA(a, k) != 0.0) op += f.margA(a, k) * kron(elemA, idB);
      for (int l = 0; l < f.sB(); ++l) {
        for (int b = 0; b < 2; ++b) {
          const double c = f.joint(a, b, k, l);
          if (c != 0.0) op += c * kron(elemA, bob[l].element(b));
        }
      }
    }
  }
  for (int l = 0; l < f.sB(); ++l) {
    for (int b = 0; b < 2; ++b) {
      if (f.margB(b, l) != 0.0) op += f.margB(b, l) * kron(idA, bob[l].element(b));
    }
  }
  return op;
}

double evaluate(const BellFunctional& f, const BipartiteDensity& rho,
                std::span<const BinaryMeasurement> alice, std::span<const BinaryMeasurement> bob) {
  const int dA = rho.dA();
  const int dB = rho.dB();
  check_measurements(f, alice, bob, dA, dB, "evaluate");
  const CMatrix& m = rho.matrix();
  const CMatrix rhoB = partial_trace(m, dA, dB, Party::B);

  std::vector<CMatrix> steered(f.sA());
  std::vector<double> pa(f.sA()), pb(f.sB());
  for (int k = 0; k < f.sA(); ++k) {
    steered[k] = steer_to_b(m, dA, dB, alice[k].plus);
    pa[k] = steered[k].trace().real();
  }
  for (int l = 0; l < f.sB(); ++l) pb[l] = trace_of_product(rhoB, bob[l].plus).real();

  double value = 0.0;
  for (int k = 0; k < f.sA(); ++k) value += f.margA(0, k) * pa[k] + f.margA(1, k) * (1.0 - pa[k]);
  for (int l = 0; l < f.sB(); ++l) value += f.margB(0, l) * pb[l] + f.margB(1, l) * (1.0 - pb[l]);
  for (int k = 0; k < f.sA(); ++k) {
    for (int l = 0; l < f.sB(); ++l) {
      const double pp = trace_of_product(steered[k], bob[l].plus).real();
      const double pm = pa[k] - pp;
      const double mp = pb[l] - pp;
      const double mm = 1.0 - pa[k] - pb[l] + pp;
      value += f.joint(0, 0, k, l) * pp + f.joint(0, 1, k, l) * pm + f.joint(1, 0, k, l) * mp +
               f.joint(1, 1, k, l) * mm;
    }
  }
  return value;
}

std::vector<CMatrix> bob_steered_operators(const BellFunctional& f, const BipartiteDensity& rho,
                                           std::span<const BinaryMeasurement> alice) {
  if (!f.two_outcome()) throw std::invalid_argument("bob_steered_operators: only two-outcome functionals are supported");
  if (int(alice.size()) != f.sA()) throw std::invalid_argument("bob_steered_operators: wrong number of Alice measurements");
  const int dA = rho.dA();
  const int dB = rho.dB();
  const CMatrix idA = CMatrix::Identity(dA, dA);
  // Alice's operator paired with B_l^+ after substituting B_l^- = 1 - B_l^+.
  std::vector<CMatrix> out;
  out.reserve(f.sB());
  for (int l = 0; l < f.sB(); ++l) {
    CMatrix g = (f.margB(0, l) - f.margB(1, l)) * idA;
    for (int k = 0; k < f.sA(); ++k) {
      const double cp = f.joint(0, 0, k, l) - f.joint(0, 1, k, l);
      const double cm = f.joint(1, 0, k, l) - f.joint(1, 1, k, l);
      // cp A^+ + cm (1 - A^+)
      if (cp != cm) g += (cp - cm) * alice[k].plus;
      if (cm != 0.0) g += cm * idA;
    }
    CMatrix fl = steer_to_b(rho.matrix(), dA, dB, g);
    out.push_back((fl + fl.adjoint()) * 0.5);
  }
  return out;
}

std::vector<CMatrix> alice_steered_operators(const BellFunctional& f, const BipartiteDensity& rho,
                                             std::span<const BinaryMeasurement> bob) {
  if (!f.two_outcome()) throw std::invalid_argument("alice_steered_operators: only two-outcome functionals are supported");
  if (int(bob.size()) != f.sB()) throw std::invalid_argument("alice_steered_operators: wrong number of Bob measurements");
  const int dA = rho.dA();
  const int dB = rho.dB();
  const CMatrix idB = CMatrix::Identity(dB, dB);
  std::vector<CMatrix> out;
  out.reserve(f.sA());
  for (int k = 0; k < f.sA(); ++k) {
    CMatrix h = (f.margA(0, k) - f.margA(1, k)) * idB;
    for (int l = 0; l < f.sB(); ++l) {
      const double cp = f.joint(0, 0, k, l) - f.joint(1, 0, k, l);
      const double cm = f.joint(0, 1, k, l) - f.joint(1, 1, k, l);
      if (cp != cm) h += (cp - cm) * bob[l].plus;
      if (cm != 0.0) h += cm * idB;
    }
    CMatrix ek = steer_to_a(rho.matrix(), dA, dB, h);
    out.push_back((ek + ek.adjoint()) * 0.5);
  }
  return out;
}

}  // namespace collbell
