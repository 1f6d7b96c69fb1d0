#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace effnum {

enum class Renormalize { No, Yes };

/// Nonnegative weights with no sum constraint. Domain of subset counting.
class GeneralWeights {
 public:
  GeneralWeights() = default;
  explicit GeneralWeights(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const GeneralWeights&, const GeneralWeights&) = default;

 private:
  std::vector<double> weights_;
};

/// Probabilities p_i >= 0 summing to 1 (within kTolSum).
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs, Renormalize renorm = Renormalize::No);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Counting weights w_i >= 0 over N >= 1 objects with sum N (within kTolSum * N).
///
/// Construction throws ConstraintError on any violated invariant. With
/// Renormalize::Yes the weights are rescaled to sum N first; an all-zero
/// vector still fails.
class CountingVector {
 public:
  explicit CountingVector(std::vector<double> weights, Renormalize renorm = Renormalize::No);

  /// W = N * P.
  static CountingVector from_probabilities(const ProbabilityVector& p);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  GeneralWeights as_general() const { return GeneralWeights(weights_); }

  friend bool operator==(const CountingVector&, const CountingVector&) = default;

 private:
  std::vector<double> weights_;
};

/// Concatenation W1 ⊞ W2. The result of two counting vectors is again a
/// counting vector of dimension N1 + N2.
CountingVector concat(const CountingVector& a, const CountingVector& b);
GeneralWeights concat(const GeneralWeights& a, const GeneralWeights& b);

/// Moves `eps` of weight from entry i to entry j (0-based). Requires
/// i != j, w_i <= w_j and 0 <= eps <= w_i; throws std::invalid_argument
/// naming the violated inequality otherwise.
CountingVector elementary_transfer(const CountingVector& w, std::size_t i, std::size_t j,
                                   double eps);

}  // namespace effnum
