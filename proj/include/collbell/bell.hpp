#pragma once

#include <span>
#include <string>
#include <vector>

#include "collbell/linalg.hpp"
#include "collbell/states.hpp"

namespace collbell {

/// Linear functional over joint and marginal outcome probabilities,
///
///   sum t[a][b][k][l] p(a,b|k,l) + sum u[a][k] pA(a|k) + sum v[b][l] pB(b|l),
///
/// with settings k < sA, l < sB and outcomes a < oA, b < oB (all 0-based;
/// outcome 0 is "+", outcome 1 is "-"). The local-hidden-variable bound is
/// computed by enumeration when the functional is built and cached.
class BellFunctional {
 public:
  /// Blank coefficient tables; fill them with the setters, then call
  /// finalize() to compute the LHV bound.
  class Builder {
   public:
    Builder(std::string name, int sA, int sB, int oA = 2, int oB = 2);
    Builder& joint(int a, int b, int k, int l, double c);
    Builder& margA(int a, int k, double c);
    Builder& margB(int b, int l, double c);
    BellFunctional finalize() &&;

   private:
    friend class BellFunctional;
    std::string name_;
    int sA_, sB_, oA_, oB_;
    std::vector<double> joint_, margA_, margB_;
  };

  const std::string& name() const { return name_; }
  int sA() const { return sA_; }
  int sB() const { return sB_; }
  int oA() const { return oA_; }
  int oB() const { return oB_; }
  bool two_outcome() const { return oA_ == 2 && oB_ == 2; }

  double joint(int a, int b, int k, int l) const {
    return joint_[((std::size_t(a) * oB_ + b) * sA_ + k) * sB_ + l];
  }
  double margA(int a, int k) const { return margA_[std::size_t(a) * sA_ + k]; }
  double margB(int b, int l) const { return margB_[std::size_t(b) * sB_ + l]; }
  double lhv_bound() const { return lhv_bound_; }

 private:
  explicit BellFunctional(Builder&& b);
  std::string name_;
  int sA_, sB_, oA_, oB_;
  std::vector<double> joint_, margA_, margB_;
  double lhv_bound_ = 0.0;
};

/// Two-outcome POVM {plus, 1 - plus} on one party's space.
struct BinaryMeasurement {
  CMatrix plus;

  int dim() const { return static_cast<int>(plus.rows()); }
  CMatrix minus() const { return CMatrix::Identity(plus.rows(), plus.cols()) - plus; }
  /// Element for outcome 0 ("+") or 1 ("-").
  CMatrix element(int outcome) const { return outcome == 0 ? plus : minus(); }
};

/// Validates 0 <= plus <= 1 (within 1e-10) and Hermiticity.
BinaryMeasurement make_measurement(CMatrix plus);

/// Clauser-Horne functional in the (+,-) convention: joint +1 on p(+-|kl)
/// for (k,l) in {(0,0),(0,1),(1,0)}, -1 for (1,1), and -pA(+|0) - pB(-|0).
BellFunctional ch();

/// I3322 in Collins-Gisin form, outcome "+" designated on both sides.
BellFunctional i3322();

/// CHSH written over probabilities so that, for every no-signalling
/// behaviour, ch value = chsh value / 4 - 1/2.
BellFunctional chsh();

/// Maximum of the functional over all deterministic local strategies.
/// Throws GuardExceeded when oA^sA * oB^sB > 1e6.
double lhv_bound_bruteforce(const BellFunctional& f);

/// Hermitian operator with evaluate(f, rho, A, B) = tr(rho * op).
CMatrix bell_operator(const BellFunctional& f, std::span<const BinaryMeasurement> alice,
                      std::span<const BinaryMeasurement> bob);

/// Expected value of the functional, probabilities tr(rho A_k^a (x) B_l^b).
double evaluate(const BellFunctional& f, const BipartiteDensity& rho,
                std::span<const BinaryMeasurement> alice, std::span<const BinaryMeasurement> bob);

/// Operators F_l on Bob's space such that, with Alice fixed,
///   evaluate(f, rho, A, B) = const + sum_l tr(F_l B_l^+).
std::vector<CMatrix> bob_steered_operators(const BellFunctional& f, const BipartiteDensity& rho,
                                           std::span<const BinaryMeasurement> alice);

/// Mirror image of bob_steered_operators: operators E_k on Alice's space.
std::vector<CMatrix> alice_steered_operators(const BellFunctional& f, const BipartiteDensity& rho,
                                             std::span<const BinaryMeasurement> bob);

}  // namespace collbell
