#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>

#include "qc/fields.hpp"

namespace qc {

using complex = std::complex<double>;

// Maximal dilatation of a single coefficient value: K = (1+|mu|)/(1-|mu|),
// +inf when |mu| >= 1. Total on C.
double max_dilatation(complex mu);

// Measurable coefficient on the open unit disk with |mu| < 1. Construction
// samples a deterministic polar grid and rejects any sampled violation;
// coefficients whose modulus only tends to 1 near the boundary pass.
class BeltramiCoefficient {
 public:
  static BeltramiCoefficient constant(complex c);
  // Coefficient of the radial stretch z|z|^{a-1}: ((a-1)/(1+a)) * z/conj(z).
  static BeltramiCoefficient radial_stretch(double a);
  // Lattice CSV "x,y,re,im" covering the disk; multilinear interpolation.
  static BeltramiCoefficient grid(const std::string& path);
  static BeltramiCoefficient from_function(std::string label,
                                           std::function<complex(complex)> f);

  complex operator()(complex z) const;  // throws DomainError when |z| >= 1
  const std::string& describe() const { return label_; }

 private:
  BeltramiCoefficient(std::string label, std::function<complex(complex)> f);
  std::string label_;
  std::function<complex(complex)> eval_;
};

// "mu-const re im" | "mu-radial a" | "mu-grid path"
BeltramiCoefficient parse_mu_spec(std::string_view text);

// K_mu as a scalar field on the open unit disk.
ScalarField dilatation_field(const BeltramiCoefficient& mu);

// Complex-valued planar map.
class PlanarMap {
 public:
  enum class Kind { identity, radial_stretch, custom };

  static PlanarMap identity();
  static PlanarMap radial_stretch(double a);  // z |z|^{a-1}, a > 0
  static PlanarMap custom(std::string label, std::function<complex(complex)> f);

  complex operator()(complex z) const { return eval_(z); }
  Kind kind() const { return kind_; }
  double stretch_exponent() const { return exponent_; }
  const std::string& describe() const { return label_; }

 private:
  PlanarMap(Kind kind, double exponent, std::string label, std::function<complex(complex)> f);
  Kind kind_;
  double exponent_;
  std::string label_;
  std::function<complex(complex)> eval_;
};

// Central-difference Wirtinger derivatives f_z = (f_x - i f_y)/2,
// f_zbar = (f_x + i f_y)/2. The stencil is run at h and h/2; the flag reports
// whether the two agree within 1e-5 relative (Richardson consistency check).
struct WirtingerPair {
  complex f_z;
  complex f_zbar;
  bool stencil_converged = true;
};
WirtingerPair wirtinger_derivatives(const PlanarMap& f, complex z, double h = 1e-6);

// mu_f = f_zbar / f_z, with 0 returned when |f_z| < 1e-12.
complex coefficient_of_map(const PlanarMap& f, complex z, double h = 1e-6);

// J_f = |f_z|^2 - |f_zbar|^2 on the same stencil.
double jacobian(const PlanarMap& f, complex z, double h = 1e-6);

// Coefficient of the symmetry extension at |z| > 1:
//   mu_F(z) = (z^2/conj(z)^2) * conj(mu(1/conj(z))).
complex reflect_coefficient(const BeltramiCoefficient& mu, complex z);

// Symmetry extension of a disk self-map: F = f on the closed disk,
// F(z) = 1/conj(f(1/conj(z))) outside.
class ReflectedMap {
 public:
  explicit ReflectedMap(PlanarMap inner) : inner_(std::move(inner)) {}
  complex operator()(complex z) const;
  const PlanarMap& inner() const { return inner_; }

 private:
  PlanarMap inner_;
};

// Checks |f(z)| < 1 on a deterministic polar sample of the disk before
// extending; a sampled violation is an input error.
ReflectedMap reflect_map(const PlanarMap& f);

// Maximum of the inversion weight 1/|w|^2 over the circle w = zeta + eps*e^{i phi},
// |zeta| = 1, against its closed form 1/(1-eps)^2 (attained at the point of
// the circle nearest the origin). fourth_power carries the squared bound for
// the 1/|w|^4 weight.
struct InversionWeightReport {
  double sampled_max = 0.0;
  double closed_form = 0.0;
  double fourth_power = 0.0;
  double argmax_phi = 0.0;  // relative to the direction of zeta
};
InversionWeightReport inversion_weight_max(double eps, int samples = 720);

// Two-sided mass comparison; `holds` is the strict/lax inequality of the
// operation, `ratio` = lhs/rhs. Non-finite quadrature refuses the check.
struct MassBound {
  bool issued = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
  std::string note;
};

// Integral of K of the reflected coefficient over the full disk D(zeta, eps),
// |zeta| = 1, against 17 times the K_mu mass of the lens D(zeta, eps) n D.
MassBound reflected_mass_bound(const BeltramiCoefficient& mu, complex zeta, double eps,
                               int resolution = 256);

// Integral of K of the reflected coefficient over the annulus 1 <= |z| <= R
// against R^4 times the K_mu mass of the unit disk.
MassBound annulus_mass_bound(const BeltramiCoefficient& mu, double R, int resolution = 256);

}  // namespace qc
