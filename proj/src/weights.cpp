#include "effnum/weights.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "effnum/errors.hpp"
#include "effnum/tolerances.hpp"

namespace effnum {
namespace {

void require_nonnegative_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ConstraintError(std::string(what) + ": entry " + std::to_string(i) +
                            " is not finite");
    }
    if (values[i] < 0.0) {
      throw ConstraintError(std::string(what) + ": entry " + std::to_string(i) +
                            " is negative");
    }
  }
}

double plain_sum(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

// Rescales `values` so that they sum to `target`. Fails on an all-zero input.
void rescale(std::vector<double>& values, double target, const char* what) {
  const double s = plain_sum(values);
  if (!(s > 0.0)) {
    throw ConstraintError(std::string(what) + ": cannot renormalize an all-zero vector");
  }
  const double scale = target / s;
  for (double& v : values) v *= scale;
}

void require_sum(std::span<const double> values, double target, double tol, const char* what) {
  const double s = plain_sum(values);
  if (std::abs(s - target) > tol) {
    throw ConstraintError(std::string(what) + ": entries sum to " + std::to_string(s) +
                          ", expected " + std::to_string(target));
  }
}

}  // namespace

GeneralWeights::GeneralWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  require_nonnegative_finite(weights_, "GeneralWeights");
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs, Renormalize renorm)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw ConstraintError("ProbabilityVector: dimension must be >= 1");
  require_nonnegative_finite(probs_, "ProbabilityVector");
  if (renorm == Renormalize::Yes) rescale(probs_, 1.0, "ProbabilityVector");
  require_sum(probs_, 1.0, kTolSum, "ProbabilityVector");
}

CountingVector::CountingVector(std::vector<double> weights, Renormalize renorm)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ConstraintError("CountingVector: dimension must be >= 1");
  require_nonnegative_finite(weights_, "CountingVector");
  const auto n = static_cast<double>(weights_.size());
  if (renorm == Renormalize::Yes) rescale(weights_, n, "CountingVector");
  require_sum(weights_, n, kTolSum * n, "CountingVector");
}

CountingVector CountingVector::from_probabilities(const ProbabilityVector& p) {
  const auto n = static_cast<double>(p.size());
  std::vector<double> w(p.probs().begin(), p.probs().end());
  for (double& x : w) x *= n;
  return CountingVector(std::move(w));
}

CountingVector concat(const CountingVector& a, const CountingVector& b) {
  std::vector<double> w(a.weights().begin(), a.weights().end());
  w.insert(w.end(), b.weights().begin(), b.weights().end());
  return CountingVector(std::move(w));
}

GeneralWeights concat(const GeneralWeights& a, const GeneralWeights& b) {
  std::vector<double> w(a.weights().begin(), a.weights().end());
  w.insert(w.end(), b.weights().begin(), b.weights().end());
  return GeneralWeights(std::move(w));
}

CountingVector elementary_transfer(const CountingVector& w, std::size_t i, std::size_t j,
                                   double eps) {
  if (i >= w.size() || j >= w.size()) {
    throw std::invalid_argument("elementary_transfer: index out of range");
  }
  if (i == j) throw std::invalid_argument("elementary_transfer: requires i != j");
  if (!(w[i] <= w[j])) throw std::invalid_argument("elementary_transfer: requires w_i <= w_j");
  if (!(eps >= 0.0)) throw std::invalid_argument("elementary_transfer: requires eps >= 0");
  if (!(eps <= w[i])) throw std::invalid_argument("elementary_transfer: requires eps <= w_i");

  std::vector<double> out(w.weights().begin(), w.weights().end());
  out[i] -= eps;
  out[j] += eps;
  return CountingVector(std::move(out));
}

}  // namespace effnum
