#include "effnum/counting_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "effnum/errors.hpp"

namespace effnum {
namespace {

constexpr double kKnotTol = 1e-12;

}  // namespace

CountingFunction CountingFunction::minimal() { return {Kind::MinimalStar, 1.0, {}}; }

CountingFunction CountingFunction::alpha(double a) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw ConstraintError("alpha counting function: exponent must lie in (0, 1], got " +
                          format_param(a));
  }
  return {Kind::Alpha, a, {}};
}

CountingFunction CountingFunction::support_plus() { return {Kind::SupportPlus, 0.0, {}}; }

CountingFunction CountingFunction::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) throw ConstraintError("tabulated: need at least two knots");
  if (knots.front().w != 0.0 || knots.front().value != 0.0) {
    throw ConstraintError("tabulated: first knot must be (0, 0)");
  }
  bool has_one = false;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const Knot& kn = knots[k];
    if (!std::isfinite(kn.w) || !std::isfinite(kn.value)) {
      throw ConstraintError("tabulated: knot " + std::to_string(k) + " is not finite");
    }
    if (kn.w == 1.0) has_one = true;
    if (kn.w >= 1.0 && std::abs(kn.value - 1.0) > kKnotTol) {
      throw ConstraintError("tabulated: knot at w = " + format_param(kn.w) +
                            " must have value 1");
    }
    if (k == 0) continue;
    const Knot& prev = knots[k - 1];
    if (!(kn.w > prev.w)) throw ConstraintError("tabulated: abscissae must increase strictly");
    if (kn.value < prev.value - kKnotTol) {
      throw ConstraintError("tabulated: values must be nondecreasing (knot " +
                            std::to_string(k) + ")");
    }
    if (k >= 2) {
      const Knot& pp = knots[k - 2];
      const double left = (prev.value - pp.value) / (prev.w - pp.w);
      const double right = (kn.value - prev.value) / (kn.w - prev.w);
      if (right > left + kKnotTol) {
        throw ConstraintError("tabulated: not concave at knot w = " + format_param(prev.w));
      }
    }
  }
  if (!has_one) throw ConstraintError("tabulated: knots must include w = 1");
  return {Kind::Tabulated, 0.0, std::move(knots)};
}

double CountingFunction::operator()(double w) const {
  switch (kind_) {
    case Kind::MinimalStar:
      return std::min(w, 1.0);
    case Kind::Alpha:
      if (w <= 0.0) return 0.0;
      if (w >= 1.0) return 1.0;
      return std::pow(w, alpha_);
    case Kind::SupportPlus:
      return w > 0.0 ? 1.0 : 0.0;
    case Kind::Tabulated:
      return interpolate_knots(knots_, 1.0, w);
  }
  return 0.0;
}

std::string CountingFunction::name() const {
  switch (kind_) {
    case Kind::MinimalStar:
      return "n_star";
    case Kind::Alpha:
      return "alpha:" + format_param(alpha_);
    case Kind::SupportPlus:
      return "n_plus";
    case Kind::Tabulated:
      return "tabulated";
  }
  return {};
}

double interpolate_knots(const std::vector<Knot>& knots, double tail, double w) {
  if (knots.empty()) return tail;
  if (w <= knots.front().w) return knots.front().value;
  if (w > knots.back().w) return tail;
  auto hi = std::lower_bound(knots.begin(), knots.end(), w,
                             [](const Knot& k, double x) { return k.w < x; });
  if (hi->w == w) return hi->value;
  auto lo = hi - 1;
  const double t = (w - lo->w) / (hi->w - lo->w);
  return lo->value + t * (hi->value - lo->value);
}

std::string format_param(double x) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace effnum
