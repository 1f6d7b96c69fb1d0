#pragma once

#include <string>
#include <vector>

namespace effnum {

struct Knot {
  double w;
  double value;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// One-variable counting function n(w). An effective number function is the
/// sum of n over the weights of its argument.
///
///   MinimalStar   n(w) = min(w, 1)
///   Alpha(a)      n(w) = min(w^a, 1), 0 < a <= 1, with 0^a = 0
///   SupportPlus   n(w) = [w > 0]   (evaluable, but discontinuous: not an ENF)
///   Tabulated     piecewise-linear through validated knots, 1 beyond w = 1
class CountingFunction {
 public:
  enum class Kind { MinimalStar, Alpha, SupportPlus, Tabulated };

  static CountingFunction minimal();
  static CountingFunction alpha(double a);
  static CountingFunction support_plus();

  /// Knots must start at (0, 0), have strictly increasing abscissae,
  /// nondecreasing values, nonincreasing slopes (concavity on the knot grid),
  /// include w = 1, and equal 1 at every knot with w >= 1. Throws
  /// ConstraintError otherwise.
  static CountingFunction tabulated(std::vector<Knot> knots);

  double operator()(double w) const;

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return alpha_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  /// False only for SupportPlus.
  bool is_enf() const noexcept { return kind_ != Kind::SupportPlus; }

  /// Stable identifier: "n_star", "alpha:<a>", "n_plus" or "tabulated".
  std::string name() const;

 private:
  CountingFunction(Kind kind, double alpha, std::vector<Knot> knots)
      : kind_(kind), alpha_(alpha), knots_(std::move(knots)) {}

  Kind kind_;
  double alpha_;
  std::vector<Knot> knots_;
};

/// Linear interpolation through `knots` (sorted by w); constant `tail` for
/// w beyond the last knot. No shape validation.
double interpolate_knots(const std::vector<Knot>& knots, double tail, double w);

/// Shortest round-trippable text for a real parameter such as an exponent.
std::string format_param(double x);

}  // namespace effnum
