#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qc/doubling.hpp"
#include "qc/fields.hpp"
#include "qc/geometry.hpp"
#include "qc/means.hpp"

namespace qc {

// The six integral hypotheses the certificate pipelines rest on.
enum class ConditionId {
  dini,               // limsup_{t->0} int_t^{eps0} (alpha - q^{-1/(n-1)}) dr/r < inf
  lipschitz,          // the same with alpha = 1
  fmv,                // limsup_{r->0} int_{r<|x|<eps0} (Q-1)/|x|^n dm < inf
  ball_mean,           // sup_{eps<eps0} ball mean <= C
  weighted_ball,       // sup_{eps<eps0} phi(1/eps) * ball mean <= C
  boundary_half_disk,  // sup_{eps<eps0} half-disk mean at a boundary point <= C
  annulus_log_growth   // annulus integral of Q/|z-z0|^2 over (eps,eps0) <= C*log(eps0/eps)
};

std::string_view condition_name(ConditionId id);

struct ConditionReport {
  ConditionId id = ConditionId::dini;
  double estimate = 0.0;  // stabilized tail maximum (may be +inf)
  enum class Verdict { holds, fails, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> grid;    // decreasing t (or eps) samples
  std::vector<double> values;  // condition value per grid point
  std::string note;

  void write_csv(std::ostream& os) const;  // "t,value"
  std::string to_json() const;
};

// Geometric grid from eps0/2 towards 0: ratio 1/2 per step while that stays
// above floor_value, otherwise the constant ratio reaching floor_value at the
// last of `points` entries.
std::vector<double> geometric_grid(double eps0, int points = 40, double floor_value = 1e-8);

// limsup-type conditions, evaluated on the decreasing grid with the
// stabilized-tail verdict rule: "holds" requires a finite estimate whose last
// three grid values agree within 1%; a nondecreasing tail that keeps growing
// reports "fails"; anything else is "inconclusive".
ConditionReport dini_condition(const ScalarField& Q, const Point& x0, double alpha, double eps0,
                               int resolution = 64, const std::vector<double>* t_grid = nullptr);
ConditionReport fmv_integral_condition(const ScalarField& Q, const Point& x0, double eps0,
                                       int resolution = 64,
                                       const std::vector<double>* r_grid = nullptr);
ConditionReport ball_mean_condition(const ScalarField& Q, const Point& x0, double eps0,
                                    int resolution = 64,
                                    const std::vector<double>* eps_grid = nullptr);
ConditionReport weighted_mean_condition(const ScalarField& Q, const Point& x0,
                                        const DoublingFunction& phi, double eps0,
                                        int resolution = 64,
                                        const std::vector<double>* eps_grid = nullptr);
ConditionReport boundary_mean_condition(const ScalarField& K, const Point& zeta, double eps0,
                                        int resolution = 128,
                                        const std::vector<double>* eps_grid = nullptr);

// The pointwise comparison (1 - q^{-1/(n-1)}) <= (q-1)/(n-1) on [0,+inf];
// q = 0 yields (-inf, -1/(n-1)) and is flagged vacuous per convention, q =
// +inf yields (1, +inf).
struct IntegrandComparison {
  double lhs;
  double rhs;
  bool vacuous;
};
IntegrandComparison integrand_comparison(double q, int n);

struct ConstantRecord {
  std::string name;
  double value;
  std::string formula;  // how the value was produced, spelled out
};

// Explicit pointwise-continuity certificate: |f(x)-f(x0)| <= C|x-x0|^alpha
// for |x-x0| < validity_radius, with every constant's derivation recorded.
struct HolderCertificate {
  bool issued = false;
  Point center;
  bool boundary_point = false;
  double exponent = 0.0;      // clamped to (0,1]
  double raw_exponent = 0.0;  // before clamping
  double constant = 0.0;
  double validity_radius = 0.0;
  std::string source;  // pipeline tag: interior-dini | ball-mean | annulus-log-growth | boundary-arc
  bool constants_symbolic = false;  // dimensional constants left unresolved
  std::vector<ConstantRecord> pipeline;
  ConditionReport hypothesis;  // backing condition report (empty grid when arithmetic-only)
  std::string note;

  std::string to_json() const;
};

// Interior pipeline: requires the Dini condition; emits
//   C = C_n / eps0^alpha * exp(M),  C_n = alpha_n (1+r0^2) / delta,
// where M is the condition estimate and delta the chordal diameter of the
// complement of B(0, r0). alpha_n is the caller-supplied dimensional
// constant (no default is invented for n >= 3).
HolderCertificate holder_certificate_interior(const ScalarField& Q, const Point& x0, double alpha,
                                              double eps0, double alpha_n, double r0,
                                              int resolution = 64);

// Doubling-weighted annulus growth: with C the sampled sup of the weighted
// ball means (grid maximum; see note) and C1 = gamma*C*Omega_n*2^n/log 2,
// checks  int_{eps<|x-x0|<eps0} phi(1/|x-x0|) Q/|x-x0|^n dm <= C1*log(1/eps)
// at every grid eps. eps0 must be < 1/2.
struct AnnulusGrowthReport {
  bool issued = false;  // false when a weighted mean is non-finite
  double C = 0.0;       // max of weighted ball means over the eps grid
  double C1 = 0.0;      // gamma*C*Omega_n*2^n/log 2
  std::vector<double> eps, lhs, rhs;
  bool all_hold = false;
  std::vector<double> violations;  // eps values where lhs > rhs
  std::string note;
};
AnnulusGrowthReport annulus_growth_bound(const ScalarField& Q, const Point& x0,
                                         const DoublingFunction& phi, double eps0,
                                         int resolution = 64,
                                         const std::vector<double>* eps_grid = nullptr);

enum class MapClass { homeomorphism, open_discrete };

// Ball-mean pipeline. For n = 2 the constants are fully explicit:
//   beta = log 2 / (4 C),   constant = (32/delta) * eps0^{-beta},
// with delta the supplied chordal separation (homeomorphism mode) or the
// chordal diameter of the complement of B(0, r) with r = delta_or_r
// (open-discrete mode); the validity radius is min{1/2, eps0^2}. For n >= 3
// the certificate is flagged constants-symbolic and carries
// C1 = C*Omega_n*2^n/log 2 in the pipeline.
HolderCertificate ball_mean_certificate(const ScalarField& Q, const Point& x0, double C_from_means,
                                        double delta_or_r, MapClass mode, double eps0,
                                        int resolution = 64);

// Pointwise chordal-distortion bound (planar): under the verified hypothesis
//   int_{eps<|z-z0|<eps0} Q psi^2(|z-z0|) dm <= C * I(eps),
//   I(eps) = int_eps^eps0 psi(t) dt,
// returns (32/Delta) * exp(-(2 pi / C) * I(|z-z0|)) at z.
struct DistortionBound {
  bool issued = false;
  double bound = 0.0;
  double I_at_z = 0.0;
  std::vector<double> eps, lhs, rhs;  // hypothesis samples
  std::string note;
};
DistortionBound radial_weight_distortion(const ScalarField& Q, const Point& z0,
                                         const std::function<double(double)>& psi, double C,
                                         double Delta, double eps0, const Point& z,
                                         int resolution = 64);

// Measured logarithmic-growth constant: max over the grid of
//   int_{eps<|z-z0|<eps0} Q/|z-z0|^2 dm  /  log(eps0/eps).
double log_growth_constant(const ScalarField& Q, const Point& z0, double eps0, int resolution = 64,
                           const std::vector<double>* eps_grid = nullptr);

// Certificate from the logarithmic growth hypothesis
//   int_{eps<|z-z0|<eps0} Q/|z-z0|^2 dm <= C log(eps0/eps):
// raw exponent 2 pi / C (clamped to 1 with the raw value kept), constant
// (32/Delta) * eps0^{-raw}. The field overload verifies the hypothesis on the
// grid first and refuses on violation.
HolderCertificate log_growth_certificate(double Delta, double C, double eps0);
HolderCertificate log_growth_certificate(const ScalarField& Q, const Point& z0, double Delta,
                                         double C, double eps0, int resolution = 64);

// Boundary-point annulus control from full-disk means: if the mean of Q over
// B(z0, r) stays below C_star for r < delta0, then for grid eps
//   int_{eps<|z-z0|<delta0} Q/|z-z0|^2 dm <= (4 pi C_star / log 2) log(1/eps).
struct BoundaryAnnulusReport {
  bool issued = false;  // false when the sampled mean breaches C_star
  double C_star = 0.0;
  double sup_mean = 0.0;  // sampled sup of the disk means
  double factor = 0.0;    // 4 pi C_star / log 2
  std::vector<double> eps, lhs, rhs;
  bool all_hold = false;
  std::string note;
};
BoundaryAnnulusReport boundary_annulus_bound(const ScalarField& Q, const Point& z0, double C_star,
                                             double delta0, int resolution = 64,
                                             const std::vector<double>* eps_grid = nullptr);

// Boundary certificate arithmetic from the half-disk-mean constant C >= 1 and
// working radius eps0 in (0,1):
//   alpha = log 2 / (68 C),  delta0 = min{1/2, eps0^2},
//   boundary constant 64 * eps0^{-alpha}  (valid for |z2-z1| < delta0),
//   global L = max{2 / delta0^alpha, 64 * eps0^{-alpha}}.
struct BoundaryCertificate {
  double C = 0.0;
  double eps0 = 0.0;
  double alpha = 0.0;
  double delta0 = 0.0;
  double boundary_constant = 0.0;
  double global_L = 0.0;

  std::string to_json() const;
};
BoundaryCertificate boundary_holder_certificate(double C, double eps0);

}  // namespace qc
