#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

// Nondecreasing weight φ on [a,∞) declared to satisfy φ(2t) ≤ γ·φ(t) for
// t ≥ T. γ is a user declaration verified by sampling (check_doubling), not
// inferred from the family.
class DoublingFunction {
 public:
  enum class Family { power, logarithm, power_plus_log, power_times_log, table };

  // t^alpha (alpha >= 0); alpha = 0 gives the unit weight.
  static DoublingFunction power(double alpha, double gamma, double a = 1.0, double T = 1.0);
  // log t; needs a > 1 so the weight stays positive.
  static DoublingFunction logarithm(double gamma, double a = 2.0, double T = 2.0);
  // t^alpha + (log t)^beta
  static DoublingFunction power_plus_log(double alpha, double beta, double gamma, double a = 2.0,
                                         double T = 2.0);
  // t^alpha * (log t)^beta
  static DoublingFunction power_times_log(double alpha, double beta, double gamma, double a = 2.0,
                                          double T = 2.0);
  // piecewise-linear table on [t.front(), t.back()], extrapolated with the
  // last segment's slope beyond the end
  static DoublingFunction table(std::vector<double> t, std::vector<double> v, double gamma,
                                double T);
  // φ ≡ 1 with γ = 1 (the unweighted case)
  static DoublingFunction one() { return power(0.0, 1.0); }

  double operator()(double t) const;  // throws InputError for t < a
  Family family() const { return family_; }
  double domain_start() const { return a_; }
  double gamma() const { return gamma_; }
  double threshold() const { return T_; }
  const std::string& describe() const { return label_; }

 private:
  DoublingFunction() = default;
  void validate_monotone() const;  // sample check of the nondecreasing invariant

  Family family_ = Family::power;
  double alpha_ = 0.0, beta_ = 0.0;
  double gamma_ = 1.0, a_ = 1.0, T_ = 1.0;
  std::vector<double> table_t_, table_v_;
  std::string label_;
};

struct DoublingCheck {
  bool holds;          // worst ratio ≤ γ·(1 + 1e-12)
  double worst_ratio;  // max φ(2t)/φ(t) over the geometric grid
  double worst_t;      // where it is attained
  bool nondecreasing;  // sampled monotonicity on [a, 2^33·a]
};

// Samples φ(2t)/φ(t) on a geometric t-grid covering [T, 2^32·T].
DoublingCheck check_doubling(const DoublingFunction& phi, int samples = 64);

// Builds a weight from a one-line spec, for the command-line tools:
//   "one"                                  φ ≡ 1
//   "power <alpha> <gamma>"                t^alpha on [1, ∞)
//   "log <gamma>"                          log t on [2, ∞)
//   "power-plus-log <alpha> <beta> <gamma>"  t^alpha + (log t)^beta on [2, ∞)
//   "power-times-log <alpha> <beta> <gamma>" t^alpha · (log t)^beta on [2, ∞)
// Throws ParseError for anything else.
DoublingFunction parse_phi_spec(std::string_view spec);

}  // namespace qc
