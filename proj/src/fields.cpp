#include "qc/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qc/errors.hpp"

namespace qc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist(std::span<const double> x, std::span<const double> c) {
  double s = 0.0;
  if (c.empty()) {
    for (double v : x) s += v * v;
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c[i];
      s += d * d;
    }
  }
  return std::sqrt(s);
}

// r^p with the r -> 0 limit conventions: p>0 -> 0, p=0 -> 1, p<0 -> +inf.
double pow_ext(double r, double p) {
  if (r == 0.0) return p > 0.0 ? 0.0 : (p == 0.0 ? 1.0 : kInf);
  return std::pow(r, p);
}

}  // namespace

FieldDomain FieldDomain::ball(Point c, double r) {
  FieldDomain d;
  d.kind = Kind::ball;
  d.center = std::move(c);
  d.radius = r;
  return d;
}

FieldDomain FieldDomain::box(Point lo, Point hi) {
  FieldDomain d;
  d.kind = Kind::box;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

bool FieldDomain::contains(std::span<const double> x) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::ball:
      return dist(x, center) <= radius;
    case Kind::box:
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
      return true;
  }
  return false;
}

bool FieldDomain::contains_ball(std::span<const double> c, double r) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::ball:
      return dist(c, center) + r <= radius;
    case Kind::box:
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] - r < lo[i] || c[i] + r > hi[i]) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// GridData

GridData::GridData(std::vector<double> axis_origin, std::vector<double> spacing,
                   std::vector<std::size_t> shape, std::vector<double> samples)
    : origin_(std::move(axis_origin)),
      spacing_(std::move(spacing)),
      shape_(std::move(shape)),
      samples_(std::move(samples)) {
  strides_.assign(shape_.size(), 1);
  for (int i = static_cast<int>(shape_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * shape_[i + 1];
  std::size_t total = 1;
  for (std::size_t s : shape_) total *= s;
  if (samples_.size() != total) throw InputError("GridData: sample count does not match shape");
}

double GridData::sample(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) flat += idx[i] * strides_[i];
  return samples_[flat];
}

FieldDomain GridData::bounding_box() const {
  Point lo(origin_), hi(origin_);
  for (std::size_t i = 0; i < shape_.size(); ++i) hi[i] += spacing_[i] * (shape_[i] - 1);
  return FieldDomain::box(std::move(lo), std::move(hi));
}

double GridData::value(std::span<const double> x, Interp mode) const {
  const int n = dim();
  if (static_cast<int>(x.size()) != n) throw InputError("GridData: point dimension mismatch");
  std::vector<double> t(n);  // fractional index per axis
  for (int i = 0; i < n; ++i) {
    t[i] = (x[i] - origin_[i]) / spacing_[i];
    const double max_i = static_cast<double>(shape_[i] - 1);
    if (t[i] < -1e-9 || t[i] > max_i + 1e-9) throw DomainError("grid field: point outside lattice box");
    t[i] = std::clamp(t[i], 0.0, max_i);
  }
  if (mode == Interp::nearest) {
    std::vector<std::size_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = static_cast<std::size_t>(std::llround(t[i]));
    return sample(idx);
  }
  // Multilinear: blend the 2^n surrounding lattice corners.
  std::vector<std::size_t> base(n);
  std::vector<double> frac(n);
  for (int i = 0; i < n; ++i) {
    const double fl = std::floor(t[i]);
    base[i] = static_cast<std::size_t>(fl);
    if (base[i] + 1 >= shape_[i] && shape_[i] > 1) base[i] = shape_[i] - 2;
    frac[i] = shape_[i] > 1 ? t[i] - static_cast<double>(base[i]) : 0.0;
  }
  // Gather the 2^n surrounding corners, then collapse one axis at a time.
  // The lerp below is exact at both endpoints and for equal endpoints, so
  // lattice nodes and constant data are reproduced bitwise.
  const std::size_t corners = std::size_t{1} << n;
  std::vector<double> acc(corners, 0.0);
  std::vector<std::size_t> idx(n);
  for (std::size_t corner = 0; corner < corners; ++corner) {
    bool ghost = false;  // hi side of a flat axis; its frac is 0, value unused
    for (int i = 0; i < n; ++i) {
      const bool hi_side = (corner >> i) & 1u;
      if (hi_side && shape_[i] == 1) {
        ghost = true;
        break;
      }
      idx[i] = base[i] + (hi_side ? 1 : 0);
    }
    if (!ghost) acc[corner] = sample(idx);
  }
  auto lerp = [](double a, double b, double t) {
    return t < 0.5 ? a + t * (b - a) : b - (1.0 - t) * (b - a);
  };
  std::size_t live = corners;
  for (int i = 0; i < n; ++i) {
    live >>= 1;
    for (std::size_t j = 0; j < live; ++j)
      acc[j] = lerp(acc[2 * j], acc[2 * j + 1], frac[i]);
  }
  return acc[0];
}

GridData load_grid_csv(const std::string& path, int value_columns, int value_index,
                       bool require_nonnegative) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open grid file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");

  int columns = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
  const int n = columns - value_columns;
  if (n < 1) throw FormatError(path + ": header must list coordinate columns before values");

  std::vector<std::vector<double>> coords(n);
  std::vector<std::vector<double>> rows;  // coordinate tuple
  std::vector<double> values;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> parsed;
    while (std::getline(ss, cell, ',')) {
      double v;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size())
        throw FormatError(path + ": row " + std::to_string(row_no) + ": bad number '" + cell + "'");
      parsed.push_back(v);
    }
    if (static_cast<int>(parsed.size()) != columns)
      throw FormatError(path + ": row " + std::to_string(row_no) + ": expected " +
                        std::to_string(columns) + " columns");
    const double q = parsed[n + value_index];
    if (require_nonnegative && q < 0.0)
      throw FormatError(path + ": row " + std::to_string(row_no) + ": negative value " +
                        std::to_string(q));
    if (!std::isfinite(q))
      throw FormatError(path + ": row " + std::to_string(row_no) + ": non-finite value");
    rows.emplace_back(parsed.begin(), parsed.begin() + n);
    values.push_back(q);
    for (int i = 0; i < n; ++i) coords[i].push_back(parsed[i]);
  }
  if (rows.empty()) throw FormatError(path + ": no data rows");

  // Axes: sorted unique coordinates, uniformly spaced.
  std::vector<std::vector<double>> axes(n);
  for (int i = 0; i < n; ++i) {
    axes[i] = coords[i];
    std::sort(axes[i].begin(), axes[i].end());
    axes[i].erase(std::unique(axes[i].begin(), axes[i].end()), axes[i].end());
    if (axes[i].size() > 1) {
      const double h = axes[i][1] - axes[i][0];
      for (std::size_t k = 1; k + 1 < axes[i].size(); ++k)
        if (std::fabs(axes[i][k + 1] - axes[i][k] - h) > 1e-9 * std::max(1.0, std::fabs(h)))
          throw FormatError(path + ": axis " + std::to_string(i + 1) + " is not uniformly spaced");
    }
  }
  std::vector<std::size_t> shape(n);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    shape[i] = axes[i].size();
    total *= shape[i];
  }
  if (rows.size() != total)
    throw FormatError(path + ": ragged lattice: " + std::to_string(rows.size()) + " rows, expected " +
                      std::to_string(total));

  std::vector<double> origin(n), spacing(n);
  for (int i = 0; i < n; ++i) {
    origin[i] = axes[i].front();
    spacing[i] = axes[i].size() > 1 ? axes[i][1] - axes[i][0] : 1.0;
  }

  // Scatter rows into the dense array, flagging duplicates/misses by row.
  std::vector<double> dense(total, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * shape[i + 1];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
      const double t = (rows[r][i] - origin[i]) / spacing[i];
      const auto k = static_cast<std::size_t>(std::llround(t));
      if (k >= shape[i] || std::fabs(t - static_cast<double>(k)) > 1e-6)
        throw FormatError(path + ": row " + std::to_string(r + 2) + " is off-lattice");
      flat += k * strides[i];
    }
    if (!std::isnan(dense[flat]))
      throw FormatError(path + ": row " + std::to_string(r + 2) + " duplicates a lattice node");
    dense[flat] = values[r];
  }
  return GridData(std::move(origin), std::move(spacing), std::move(shape), std::move(dense));
}

// ---------------------------------------------------------------------------
// ScalarField

struct ScalarField::Impl {
  int dim = 0;
  FieldDomain domain;
  std::string label;
  std::function<double(std::span<const double>)> eval;
};

double ScalarField::operator()(std::span<const double> x) const {
  if (impl_->dim != 0 && static_cast<int>(x.size()) != impl_->dim)
    throw InputError("ScalarField: point dimension mismatch for field '" + impl_->label + "'");
  return impl_->eval(x);
}

int ScalarField::dim() const { return impl_->dim; }
const FieldDomain& ScalarField::domain() const { return impl_->domain; }
const std::string& ScalarField::describe() const { return impl_->label; }

ScalarField ScalarField::make(int dim, FieldDomain dom, std::string label,
                              std::function<double(std::span<const double>)> f) {
  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->domain = std::move(dom);
  impl->label = std::move(label);
  impl->eval = std::move(f);
  return ScalarField(std::move(impl));
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ScalarField ScalarField::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("constant field: need finite c >= 0");
  return make(0, FieldDomain::everything(), "const " + fmt_num(c),
                    [c](std::span<const double>) { return c; });
}

ScalarField ScalarField::radial_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw InputError("radial-K field: need finite K >= 0");
  return make(0, FieldDomain::everything(), "radial-K " + fmt_num(k),
                    [k](std::span<const double>) { return k; });
}

ScalarField ScalarField::power(double p, Point center, double offset, double scale) {
  if (offset < 0.0 || scale < 0.0) throw InputError("power field: offset and scale must be >= 0");
  const int dim = static_cast<int>(center.size());
  return make(dim, FieldDomain::everything(),
                    "power p=" + fmt_num(p) + (offset != 0.0 ? " offset=" + fmt_num(offset) : ""),
                    [p, offset, scale, c = std::move(center)](std::span<const double> x) {
                      return offset + scale * pow_ext(dist(x, c), p);
                    });
}

ScalarField ScalarField::log_power(double p, double q, Point center) {
  const int dim = static_cast<int>(center.size());
  FieldDomain dom = FieldDomain::ball(center.empty() ? Point{} : center, 1.0);
  return make(dim, std::move(dom), "log-power p=" + fmt_num(p) + " q=" + fmt_num(q),
                    [p, q, c = std::move(center)](std::span<const double> x) {
                      const double r = dist(x, c);
                      if (r == 0.0) {
                        if (p > 0.0) return 0.0;
                        if (p < 0.0) return kInf;
                        return q > 0.0 ? kInf : (q < 0.0 ? 0.0 : 1.0);
                      }
                      const double lg = std::log(1.0 / r);
                      return std::pow(r, p) * pow_ext(lg, q);
                    });
}

ScalarField ScalarField::fmo_spike(double c, double rho, Point center) {
  if (c < 0.0 || rho <= 0.0) throw InputError("fmo-spike field: need c >= 0 and rho > 0");
  const int dim = static_cast<int>(center.size());
  return make(dim, FieldDomain::everything(), "fmo-spike c=" + fmt_num(c) + " rho=" + fmt_num(rho),
                    [c, rho, ctr = std::move(center)](std::span<const double> x) {
                      return 1.0 + (dist(x, ctr) < rho ? c : 0.0);
                    });
}

ScalarField ScalarField::grid(GridData data, GridData::Interp mode) {
  auto shared = std::make_shared<GridData>(std::move(data));
  FieldDomain dom = shared->bounding_box();
  const int dim = shared->dim();
  return make(dim, std::move(dom), "grid",
                    [shared, mode](std::span<const double> x) { return shared->value(x, mode); });
}

ScalarField ScalarField::from_function(int dim, std::function<double(std::span<const double>)> f,
                                       FieldDomain dom, std::string label) {
  return make(dim, std::move(dom), std::move(label), std::move(f));
}

ScalarField load_grid_field(const std::string& path, GridData::Interp mode) {
  return ScalarField::grid(load_grid_csv(path, 1, 0, /*require_nonnegative=*/true), mode);
}

// ---------------------------------------------------------------------------
// Field-spec parser

namespace {

struct Token {
  std::string text;
  std::size_t pos;  // 1-based column
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    toks.push_back({std::string(text.substr(i, j - i)), i + 1});
    i = j;
  }
  return toks;
}

double parse_double_tok(const std::string& s, std::size_t pos) {
  double v;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("malformed number '" + s + "'", pos);
  return v;
}

Point parse_point_tok(const std::string& s, std::size_t pos) {
  Point out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    const std::string part = s.substr(start, comma == std::string::npos ? comma : comma - start);
    out.push_back(parse_double_tok(part, pos));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct KeyValues {
  std::vector<std::pair<Token, Token>> kv;  // key token, value token
  std::vector<Token> positional;
};

KeyValues split_args(const std::vector<Token>& toks) {
  KeyValues out;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].text.find('=');
    if (eq == std::string::npos) {
      out.positional.push_back(toks[i]);
    } else {
      Token key{toks[i].text.substr(0, eq), toks[i].pos};
      Token val{toks[i].text.substr(eq + 1), toks[i].pos + eq + 1};
      if (key.text.empty() || val.text.empty())
        throw ParseError("malformed key=value argument '" + toks[i].text + "'", toks[i].pos);
      out.kv.emplace_back(std::move(key), std::move(val));
    }
  }
  return out;
}

const Token* find_key(const KeyValues& args, std::string_view key) {
  for (const auto& [k, v] : args.kv)
    if (k.text == key) return &v;
  return nullptr;
}

void reject_unknown_keys(const KeyValues& args, std::initializer_list<std::string_view> known) {
  for (const auto& [k, v] : args.kv) {
    bool ok = false;
    for (auto known_key : known) ok = ok || k.text == known_key;
    if (!ok) throw ParseError("unknown parameter '" + k.text + "'", k.pos);
  }
}

}  // namespace

ScalarField parse_field_spec(std::string_view text) {
  const auto toks = tokenize(text);
  if (toks.empty()) throw ParseError("empty field spec", 1);
  const std::string& family = toks[0].text;
  const auto args = split_args(toks);

  auto require_key = [&](std::string_view key) -> const Token& {
    const Token* t = find_key(args, key);
    if (!t) throw ParseError("missing required parameter '" + std::string(key) + "'", toks[0].pos);
    return *t;
  };

  if (family == "const") {
    if (args.positional.size() != 1 || !args.kv.empty())
      throw ParseError("const expects exactly one value", toks[0].pos);
    return ScalarField::constant(parse_double_tok(args.positional[0].text, args.positional[0].pos));
  }
  if (family == "radial-K") {
    reject_unknown_keys(args, {"K"});
    if (!args.positional.empty())
      throw ParseError("radial-K takes K=<value>", args.positional[0].pos);
    const Token& t = require_key("K");
    return ScalarField::radial_k(parse_double_tok(t.text, t.pos));
  }
  if (family == "power") {
    reject_unknown_keys(args, {"p", "center", "offset", "scale"});
    const Token& p = require_key("p");
    Point center;
    if (const Token* c = find_key(args, "center")) center = parse_point_tok(c->text, c->pos);
    double offset = 0.0, scale = 1.0;
    if (const Token* o = find_key(args, "offset")) offset = parse_double_tok(o->text, o->pos);
    if (const Token* s = find_key(args, "scale")) scale = parse_double_tok(s->text, s->pos);
    return ScalarField::power(parse_double_tok(p.text, p.pos), std::move(center), offset, scale);
  }
  if (family == "log-power") {
    reject_unknown_keys(args, {"p", "q", "center"});
    const Token& p = require_key("p");
    const Token& q = require_key("q");
    Point center;
    if (const Token* c = find_key(args, "center")) center = parse_point_tok(c->text, c->pos);
    return ScalarField::log_power(parse_double_tok(p.text, p.pos), parse_double_tok(q.text, q.pos),
                                  std::move(center));
  }
  if (family == "fmo-spike") {
    reject_unknown_keys(args, {"c", "rho", "center"});
    const Token& c = require_key("c");
    const Token& rho = require_key("rho");
    Point center;
    if (const Token* ct = find_key(args, "center")) center = parse_point_tok(ct->text, ct->pos);
    return ScalarField::fmo_spike(parse_double_tok(c.text, c.pos),
                                  parse_double_tok(rho.text, rho.pos), std::move(center));
  }
  if (family == "grid") {
    reject_unknown_keys(args, {"mode"});
    if (args.positional.size() != 1) throw ParseError("grid expects a path", toks[0].pos);
    GridData::Interp mode = GridData::Interp::multilinear;
    if (const Token* m = find_key(args, "mode")) {
      if (m->text == "nearest")
        mode = GridData::Interp::nearest;
      else if (m->text == "multilinear")
        mode = GridData::Interp::multilinear;
      else
        throw ParseError("unknown interpolation mode '" + m->text + "'", m->pos);
    }
    return load_grid_field(args.positional[0].text, mode);
  }
  throw ParseError("unknown field family '" + family + "'", toks[0].pos);
}

// ---------------------------------------------------------------------------
// BenchmarkMap

BenchmarkMap BenchmarkMap::identity(int dim) {
  if (dim < 2) throw InputError("BenchmarkMap: dimension must be >= 2");
  return BenchmarkMap(Kind::identity, dim, 1.0);
}

BenchmarkMap BenchmarkMap::radial_stretch(int dim, double exponent) {
  if (dim < 2) throw InputError("BenchmarkMap: dimension must be >= 2");
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw InputError("radial stretch: exponent must lie in (0, 1]");
  return BenchmarkMap(Kind::radial_stretch, dim, exponent);
}

// Components live on a trailing lattice axis (origin 0, spacing 1, length =
// image dimension); evaluating at (x, k) with multilinear interpolation picks
// component k exactly because k is an integer coordinate.
BenchmarkMap BenchmarkMap::grid_map(GridData components) {
  if (components.dim() < 3)
    throw InputError("grid map: lattice needs spatial axes plus a component axis");
  BenchmarkMap m(Kind::grid, components.dim() - 1, 1.0);
  m.grid_ = std::make_shared<GridData>(std::move(components));
  return m;
}

Point BenchmarkMap::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InputError("BenchmarkMap: dimension mismatch");
  switch (kind_) {
    case Kind::identity:
      return Point(x.begin(), x.end());
    case Kind::radial_stretch: {
      double r = 0.0;
      for (double v : x) r += v * v;
      r = std::sqrt(r);
      if (r == 0.0) return Point(x.size(), 0.0);
      const double f = std::pow(r, exponent_ - 1.0);
      Point out(x.begin(), x.end());
      for (double& v : out) v *= f;
      return out;
    }
    case Kind::grid:
      break;
  }
  Point out(dim_);
  std::vector<double> xt(x.begin(), x.end());
  xt.push_back(0.0);
  for (int k = 0; k < dim_; ++k) {
    xt.back() = static_cast<double>(k);
    out[k] = grid_->value(xt, GridData::Interp::multilinear);
  }
  return out;
}

double BenchmarkMap::radial_profile(double r) const {
  if (r < 0.0) throw InputError("radial_profile: need r >= 0");
  switch (kind_) {
    case Kind::identity:
      return r;
    case Kind::radial_stretch:
      return std::pow(r, exponent_);
    case Kind::grid:
      throw InputError("radial_profile: grid maps are not radial");
  }
  return r;
}

ScalarField BenchmarkMap::exact_dilatation() const {
  switch (kind_) {
    case Kind::identity:
      return ScalarField::constant(1.0);
    case Kind::radial_stretch:
      return ScalarField::constant(1.0 / exponent_);
    case Kind::grid:
      throw InputError("exact_dilatation: unknown for grid maps");
  }
  return ScalarField::constant(1.0);
}

BenchmarkMap parse_map_spec(std::string_view text, int dim) {
  if (text == "identity") return BenchmarkMap::identity(dim);
  if (text.rfind("radial:", 0) == 0) {
    const std::string num(text.substr(7));
    return BenchmarkMap::radial_stretch(dim, parse_double_tok(num, 8));
  }
  if (text.rfind("grid:", 0) == 0) {
    const std::string path(text.substr(5));
    // CSV rows "x1,...,xn,f1,...,fn"; merge the n component lattices onto a
    // trailing component axis.
    std::vector<GridData> comps;
    comps.reserve(dim);
    for (int k = 0; k < dim; ++k)
      comps.push_back(load_grid_csv(path, dim, k, /*require_nonnegative=*/false));
    const FieldDomain box = comps[0].bounding_box();
    std::vector<double> origin(box.lo), spacing;
    std::vector<std::size_t> shape(comps[0].shape());
    std::size_t nodes = 1;
    for (int i = 0; i < comps[0].dim(); ++i) {
      spacing.push_back(comps[0].spacing(i));
      nodes *= shape[i];
    }
    origin.push_back(0.0);
    spacing.push_back(1.0);
    shape.push_back(static_cast<std::size_t>(dim));
    std::vector<double> samples(nodes * dim);
    std::vector<std::size_t> idx(comps[0].dim(), 0);
    for (std::size_t node = 0; node < nodes; ++node) {
      std::size_t rem = node;
      for (int i = comps[0].dim() - 1; i >= 0; --i) {
        idx[i] = rem % comps[0].shape()[i];
        rem /= comps[0].shape()[i];
      }
      for (int k = 0; k < dim; ++k) samples[node * dim + k] = comps[k].sample(idx);
    }
    return BenchmarkMap::grid_map(
        GridData(std::move(origin), std::move(spacing), std::move(shape), std::move(samples)));
  }
  throw ParseError("unknown map spec '" + std::string(text) + "'", 1);
}

}  // namespace qc
