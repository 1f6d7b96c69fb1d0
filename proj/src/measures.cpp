#include "effnum/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "effnum/errors.hpp"

namespace effnum {
namespace {

std::vector<double> sorted_copy(std::span<const double> w) {
  std::vector<double> s(w.begin(), w.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double eval_separable(const CountingFunction& f, std::span<const double> weights) {
  double total = 0.0;
  for (double w : sorted_copy(weights)) total += f(w);
  return total;
}

double eval_separable(const CountingFunction& f, const GeneralWeights& w) {
  return eval_separable(f, w.weights());
}

double eval_separable(const CountingFunction& f, const CountingVector& w) {
  return eval_separable(f, w.weights());
}

double effective_number_min(const CountingVector& w) {
  return eval_separable(CountingFunction::minimal(), w);
}

double support_count(const GeneralWeights& w) {
  return static_cast<double>(std::count_if(w.weights().begin(), w.weights().end(),
                                           [](double x) { return x > 0.0; }));
}

double support_count(const CountingVector& w) { return support_count(w.as_general()); }

double participation_number(const CountingVector& w) {
  double sum_sq = 0.0;
  for (double x : sorted_copy(w.weights())) sum_sq += x * x;
  if (!(sum_sq > 0.0)) throw std::domain_error("participation_number: all-zero weights");
  const auto n = static_cast<double>(w.size());
  return n * n / sum_sq;
}

double exp_shannon(const CountingVector& w) {
  const auto n = static_cast<double>(w.size());
  double entropy = 0.0;
  for (double x : sorted_copy(w.weights())) {
    if (x <= 0.0) continue;
    const double p = x / n;
    entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

double co_enf_value(const CountingFunction& f, const CountingVector& w) {
  return static_cast<double>(w.size()) - eval_separable(f, w);
}

double effective_fraction(const CountingFunction& f, const ProbabilityVector& p) {
  const auto n = static_cast<double>(p.size());
  std::vector<double> w(p.probs().begin(), p.probs().end());
  for (double& x : w) x *= n;
  return eval_separable(f, w) / n;
}

CountingTable extract_counting_table(const Measure& measure, std::vector<double> grid) {
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("extract_counting_table: grid points must lie in [0, 1]");
    }
  }
  grid.push_back(0.0);
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double g_one = measure(CountingVector({1.0, 1.0})) / 2.0;
  CountingTable table;
  table.tail = g_one;
  table.knots.reserve(grid.size());
  for (double x : grid) {
    const double value = measure(CountingVector({x, 2.0 - x})) - g_one;
    table.knots.push_back({x, value});
  }
  return table;
}

CountingFunction extract_counting_function(const Measure& measure, std::vector<double> grid) {
  return CountingFunction::tabulated(extract_counting_table(measure, std::move(grid)).knots);
}

Measure separable_measure(CountingFunction f) {
  return [f = std::move(f)](const CountingVector& w) { return eval_separable(f, w); };
}

Measure measure_by_name(const std::string& name) {
  if (name == "n_star") return separable_measure(CountingFunction::minimal());
  if (name == "n_plus") return [](const CountingVector& w) { return support_count(w); };
  if (name == "participation") return participation_number;
  if (name == "exp_shannon") return exp_shannon;
  if (name.rfind("alpha:", 0) == 0) {
    const std::string arg = name.substr(6);
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) {
      throw std::invalid_argument("unknown measure '" + name + "'");
    }
    return separable_measure(CountingFunction::alpha(a));
  }
  throw std::invalid_argument("unknown measure '" + name + "'");
}

double MeasureReport::at(const std::string& id) const {
  for (const auto& [key, v] : values) {
    if (key == id) return v;
  }
  throw std::out_of_range("MeasureReport: no measure '" + id + "'");
}

}  // namespace effnum
