#include "qc/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qc/errors.hpp"

namespace qc {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

DoublingFunction DoublingFunction::power(double alpha, double gamma, double a, double T) {
  if (alpha < 0.0) throw InputError("doubling weight t^alpha: need alpha >= 0");
  if (!(gamma > 0.0) || !(a > 0.0) || T < a)
    throw InputError("doubling weight: need gamma > 0, a > 0, T >= a");
  DoublingFunction f;
  f.family_ = Family::power;
  f.alpha_ = alpha;
  f.gamma_ = gamma;
  f.a_ = a;
  f.T_ = T;
  f.label_ = alpha == 0.0 ? "1" : "t^" + num(alpha);
  f.validate_monotone();
  return f;
}

DoublingFunction DoublingFunction::logarithm(double gamma, double a, double T) {
  if (!(a > 1.0)) throw InputError("doubling weight log t: need a > 1 for positivity");
  if (!(gamma > 0.0) || T < a) throw InputError("doubling weight: need gamma > 0, T >= a");
  DoublingFunction f;
  f.family_ = Family::logarithm;
  f.gamma_ = gamma;
  f.a_ = a;
  f.T_ = T;
  f.label_ = "log t";
  f.validate_monotone();
  return f;
}

DoublingFunction DoublingFunction::power_plus_log(double alpha, double beta, double gamma, double a,
                                                  double T) {
  if (alpha < 0.0 || beta < 0.0)
    throw InputError("doubling weight t^a+log^b t: need alpha, beta >= 0");
  if (!(a > 1.0)) throw InputError("doubling weight with log part: need a > 1");
  if (!(gamma > 0.0) || T < a) throw InputError("doubling weight: need gamma > 0, T >= a");
  DoublingFunction f;
  f.family_ = Family::power_plus_log;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.gamma_ = gamma;
  f.a_ = a;
  f.T_ = T;
  f.label_ = "t^" + num(alpha) + "+log^" + num(beta) + " t";
  f.validate_monotone();
  return f;
}

DoublingFunction DoublingFunction::power_times_log(double alpha, double beta, double gamma,
                                                   double a, double T) {
  if (alpha < 0.0 || beta < 0.0)
    throw InputError("doubling weight t^a*log^b t: need alpha, beta >= 0");
  if (!(a > 1.0)) throw InputError("doubling weight with log part: need a > 1");
  if (!(gamma > 0.0) || T < a) throw InputError("doubling weight: need gamma > 0, T >= a");
  DoublingFunction f;
  f.family_ = Family::power_times_log;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.gamma_ = gamma;
  f.a_ = a;
  f.T_ = T;
  f.label_ = "t^" + num(alpha) + "*log^" + num(beta) + " t";
  f.validate_monotone();
  return f;
}

DoublingFunction DoublingFunction::table(std::vector<double> t, std::vector<double> v, double gamma,
                                         double T) {
  if (t.size() < 2 || t.size() != v.size())
    throw InputError("doubling table: need matching t/value lists of length >= 2");
  if (!std::is_sorted(t.begin(), t.end()) ||
      std::adjacent_find(t.begin(), t.end()) != t.end())
    throw InputError("doubling table: t values must be strictly increasing");
  if (!(t.front() > 0.0)) throw InputError("doubling table: domain start must be positive");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) throw InputError("doubling table: values must be nondecreasing");
  if (v.front() < 0.0) throw InputError("doubling table: values must be nonnegative");
  if (!(gamma > 0.0) || T < t.front())
    throw InputError("doubling weight: need gamma > 0, T >= domain start");
  DoublingFunction f;
  f.family_ = Family::table;
  f.gamma_ = gamma;
  f.a_ = t.front();
  f.T_ = T;
  f.table_t_ = std::move(t);
  f.table_v_ = std::move(v);
  f.label_ = "table[" + std::to_string(f.table_t_.size()) + "]";
  return f;
}

double DoublingFunction::operator()(double t) const {
  if (t < a_ * (1.0 - 1e-12))
    throw InputError("doubling weight '" + label_ + "' evaluated below its domain start " +
                     num(a_));
  t = std::max(t, a_);
  switch (family_) {
    case Family::power:
      return alpha_ == 0.0 ? 1.0 : std::pow(t, alpha_);
    case Family::logarithm:
      return std::log(t);
    case Family::power_plus_log:
      return std::pow(t, alpha_) + std::pow(std::log(t), beta_);
    case Family::power_times_log:
      return std::pow(t, alpha_) * std::pow(std::log(t), beta_);
    case Family::table:
      break;
  }
  if (t >= table_t_.back()) {
    const std::size_t m = table_t_.size();
    const double slope =
        (table_v_[m - 1] - table_v_[m - 2]) / (table_t_[m - 1] - table_t_[m - 2]);
    return table_v_.back() + slope * (t - table_t_.back());
  }
  const auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - table_t_.begin());
  const double w = (t - table_t_[i - 1]) / (table_t_[i] - table_t_[i - 1]);
  return table_v_[i - 1] + w * (table_v_[i] - table_v_[i - 1]);
}

void DoublingFunction::validate_monotone() const {
  // Sampled form of the nondecreasing invariant over [a, 2^33 a].
  double prev = (*this)(a_);
  for (int k = 1; k <= 66; ++k) {
    const double t = a_ * std::pow(2.0, 0.5 * k);
    const double cur = (*this)(t);
    if (cur < prev * (1.0 - 1e-12))
      throw InputError("doubling weight '" + label_ + "' is decreasing near t = " + num(t));
    prev = cur;
  }
}

DoublingCheck check_doubling(const DoublingFunction& phi, int samples) {
  if (samples < 16) throw InputError("check_doubling: need at least 16 samples");
  DoublingCheck out{true, 0.0, phi.threshold(), true};
  const double T = phi.threshold();
  // Geometric grid of t covering [T, 2^32 T]; ratios need φ up to 2^33 T.
  const double step = 32.0 / (samples - 1);
  double prev = -1.0;
  for (int k = 0; k < samples; ++k) {
    const double t = T * std::pow(2.0, step * k);
    const double num = phi(2.0 * t);
    const double den = phi(t);
    if (den < prev) out.nondecreasing = false;
    prev = den;
    if (den <= 0.0) continue;  // ratio undefined at a zero weight
    const double ratio = num / den;
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_t = t;
    }
  }
  out.holds = out.worst_ratio <= phi.gamma() * (1.0 + 1e-12);
  return out;
}

DoublingFunction parse_phi_spec(std::string_view spec) {
  std::vector<std::string> tok;
  std::string cur;
  for (char c : spec) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tok.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tok.push_back(std::move(cur));
  if (tok.empty()) throw ParseError("weight spec is empty", 1);

  auto need = [&](size_t n) {
    if (tok.size() != n + 1)
      throw ParseError("weight spec '" + tok[0] + "' takes " + std::to_string(n) +
                           " numeric argument(s), got " + std::to_string(tok.size() - 1),
                       1);
  };
  auto num_at = [&](size_t i) {
    try {
      size_t used = 0;
      const double v = std::stod(tok[i], &used);
      if (used != tok[i].size()) throw std::invalid_argument(tok[i]);
      return v;
    } catch (const std::exception&) {
      throw ParseError("weight spec: '" + tok[i] + "' is not a number", i + 1);
    }
  };

  if (tok[0] == "one") {
    need(0);
    return DoublingFunction::one();
  }
  if (tok[0] == "power") {
    need(2);
    return DoublingFunction::power(num_at(1), num_at(2));
  }
  if (tok[0] == "log") {
    need(1);
    return DoublingFunction::logarithm(num_at(1));
  }
  if (tok[0] == "power-plus-log") {
    need(3);
    return DoublingFunction::power_plus_log(num_at(1), num_at(2), num_at(3));
  }
  if (tok[0] == "power-times-log") {
    need(3);
    return DoublingFunction::power_times_log(num_at(1), num_at(2), num_at(3));
  }
  throw ParseError("unknown weight family '" + tok[0] +
                       "' (expected one|power|log|power-plus-log|power-times-log)",
                   1);
}

}  // namespace qc
