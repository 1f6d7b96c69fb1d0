#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "effnum/counting_function.hpp"
#include "effnum/weights.hpp"

namespace effnum {

/// Black-box measure on counting vectors.
using Measure = std::function<double(const CountingVector&)>;

/// Sum of f over the weights, accumulated in ascending weight order so the
/// result is independent of the input ordering bit for bit.
double eval_separable(const CountingFunction& f, std::span<const double> weights);
double eval_separable(const CountingFunction& f, const GeneralWeights& w);
double eval_separable(const CountingFunction& f, const CountingVector& w);

/// Minimal effective number: sum of min(w_i, 1).
double effective_number_min(const CountingVector& w);

/// Number of strictly positive weights.
double support_count(const GeneralWeights& w);
double support_count(const CountingVector& w);

/// N^2 / sum w_i^2.
double participation_number(const CountingVector& w);

/// exp of the Shannon entropy of p = w / N. Not additive.
double exp_shannon(const CountingVector& w);

/// Co-number N - sum f(w_i).
double co_enf_value(const CountingFunction& f, const CountingVector& w);

/// (1/N) * sum f(N p_i). For n_star this is sum min(p_i, 1/N).
double effective_fraction(const CountingFunction& f, const ProbabilityVector& p);

/// Raw counting-function table recovered from a black-box measure. `knots`
/// cover [0, 1]; beyond 1 the function equals `tail` = measure(1,1)/2.
struct CountingTable {
  std::vector<Knot> knots;
  double tail = 1.0;

  double operator()(double w) const { return interpolate_knots(knots, tail, w); }
};

/// Probes `measure` on the two-object vectors (x, 2 - x) and subtracts
/// measure(1, 1) / 2. The grid is sorted, deduplicated and completed with
/// the points 0 and 1. Evaluation errors propagate.
CountingTable extract_counting_table(const Measure& measure, std::vector<double> grid);

/// As extract_counting_table, validated into a tabulated counting function.
/// Throws ConstraintError if the recovered table is not a counting function.
CountingFunction extract_counting_function(const Measure& measure, std::vector<double> grid);

/// Measure adapters.
Measure separable_measure(CountingFunction f);

/// Measures by identifier: n_star, n_plus, participation, exp_shannon,
/// alpha:<a>. Throws std::invalid_argument on unknown names.
Measure measure_by_name(const std::string& name);

/// Measure id -> value, in insertion order.
struct MeasureReport {
  std::size_t dimension = 0;
  std::vector<std::pair<std::string, double>> values;

  void add(std::string id, double v) { values.emplace_back(std::move(id), v); }
  /// Throws std::out_of_range when absent.
  double at(const std::string& id) const;
};

}  // namespace effnum
