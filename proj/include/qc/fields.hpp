#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qc/geometry.hpp"

namespace qc {

// Region a field is defined on; `all` means every point of R^n.
struct FieldDomain {
  enum class Kind { all, ball, box };
  Kind kind = Kind::all;
  Point center;       // ball
  double radius = 0;  // ball
  Point lo, hi;       // box

  static FieldDomain everything() { return {}; }
  static FieldDomain ball(Point c, double r);
  static FieldDomain box(Point lo, Point hi);

  bool contains(std::span<const double> x) const;
  bool contains_ball(std::span<const double> c, double r) const;
};

// Regular-lattice samples without a sign constraint; shared by scalar grid
// fields (which additionally demand nonnegative samples) and grid maps.
class GridData {
 public:
  enum class Interp { nearest, multilinear };

  GridData(std::vector<double> axis_origin, std::vector<double> spacing,
           std::vector<std::size_t> shape, std::vector<double> samples);

  int dim() const { return static_cast<int>(shape_.size()); }
  double spacing(int axis) const { return spacing_[axis]; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  double sample(std::span<const std::size_t> idx) const;
  FieldDomain bounding_box() const;

  double value(std::span<const double> x, Interp mode) const;  // throws DomainError outside

 private:
  std::vector<double> origin_, spacing_;
  std::vector<std::size_t> shape_, strides_;
  std::vector<double> samples_;
};

// Columns layout of a lattice CSV: n coordinate columns then `values` columns.
// Checks lattice regularity and completeness; names the offending data row on
// failure.
GridData load_grid_csv(const std::string& path, int value_columns, int value_index,
                       bool require_nonnegative);

// Dilatation field Q: R^n -> [0, +inf]. Immutable; evaluation is deterministic
// and +inf is an admissible value (parametric families only at isolated
// points, grid ingestion rejects it).
class ScalarField {
 public:
  double operator()(std::span<const double> x) const;
  int dim() const;  // 0 = any dimension
  const FieldDomain& domain() const;
  const std::string& describe() const;

  static ScalarField constant(double c);
  static ScalarField radial_k(double k);
  // offset + scale * |x-center|^p; empty center = origin in any dimension
  static ScalarField power(double p, Point center = {}, double offset = 0.0, double scale = 1.0);
  // |x-center|^p * (log(1/|x-center|))^q on the unit ball about the center
  static ScalarField log_power(double p, double q, Point center = {});
  // 1 + c * indicator(|x-center| < rho)
  static ScalarField fmo_spike(double c, double rho, Point center = {});
  static ScalarField grid(GridData data, GridData::Interp mode);
  static ScalarField from_function(int dim, std::function<double(std::span<const double>)> f,
                                   FieldDomain dom = FieldDomain::everything(),
                                   std::string label = "custom");

 private:
  struct Impl;
  explicit ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static ScalarField make(int dim, FieldDomain dom, std::string label,
                          std::function<double(std::span<const double>)> f);
  std::shared_ptr<const Impl> impl_;
};

// One-line field spec: "<family> [args...]" with families
//   const c | power p=.. [center=..,..] [offset=..] [scale=..]
//   log-power p=.. q=.. [center=..,..] | radial-K K=..
//   fmo-spike c=.. rho=.. [center=..,..] | grid <path> [mode=nearest|multilinear]
ScalarField parse_field_spec(std::string_view text);

// CSV lattice "x1,...,xn,q" -> grid-backed field.
ScalarField load_grid_field(const std::string& path,
                            GridData::Interp mode = GridData::Interp::multilinear);

// Benchmark mapping of R^n with exact dilatation metadata where known.
class BenchmarkMap {
 public:
  enum class Kind { identity, radial_stretch, grid };

  static BenchmarkMap identity(int dim);
  static BenchmarkMap radial_stretch(int dim, double exponent);  // x |x|^{a-1}, a in (0,1]
  static BenchmarkMap grid_map(GridData components_interleaved);

  Point operator()(std::span<const double> x) const;
  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double stretch_exponent() const { return exponent_; }
  bool is_radial() const { return kind_ != Kind::grid; }
  double radial_profile(double r) const;  // |f(x)| on |x| = r, radial kinds only
  ScalarField exact_dilatation() const;   // identity -> 1, stretch -> 1/a

 private:
  Kind kind_;
  int dim_;
  double exponent_ = 1.0;
  std::shared_ptr<const GridData> grid_;
  BenchmarkMap(Kind k, int dim, double a) : kind_(k), dim_(dim), exponent_(a) {}
};

// "identity" | "radial:a" | "grid:path"
BenchmarkMap parse_map_spec(std::string_view text, int dim);

}  // namespace qc
