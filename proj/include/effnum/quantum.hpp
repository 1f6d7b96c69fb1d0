#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "effnum/counting_function.hpp"
#include "effnum/weights.hpp"

namespace effnum {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// <a|b>, conjugating the left argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

/// Normalized state vector. Rejects |psi|^2 != 1 (within kTolNorm) unless
/// renormalization is requested.
class QuantumState {
 public:
  explicit QuantumState(Amplitudes amplitudes, Renormalize renorm = Renormalize::No);

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::size_t dimension() const noexcept { return amps_.size(); }

 private:
  Amplitudes amps_;
};

/// n <= N mutually orthonormal vectors of a Hilbert space of dimension N.
class OrthonormalSet {
 public:
  /// Throws ConstraintError if vectors differ in length from `dimension`,
  /// n > dimension, or |<j|k> - delta_jk| > kTolOrtho.
  OrthonormalSet(std::vector<Amplitudes> vectors, std::size_t dimension);

  /// The standard basis e_1..e_N.
  static OrthonormalSet standard_basis(std::size_t dimension);

  const std::vector<Amplitudes>& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dimension() const noexcept { return dim_; }

 private:
  std::vector<Amplitudes> vectors_;
  std::size_t dim_;
};

/// Union of two orthonormal sets; throws ConstraintError when the union is
/// not orthonormal.
OrthonormalSet join(const OrthonormalSet& a, const OrthonormalSet& b);

/// Decomposition of the Hilbert space into mutually orthogonal subspaces,
/// given either as blocks of basis indices (0-based) or as orthonormal
/// spanning sets.
class SubspacePartition {
 public:
  using IndexBlocks = std::vector<std::vector<std::size_t>>;
  using SpanningSets = std::vector<OrthonormalSet>;

  /// Blocks must be nonempty, in range and pairwise disjoint.
  SubspacePartition(IndexBlocks blocks, std::size_t dimension);
  /// Sets must share the dimension and be mutually orthogonal.
  explicit SubspacePartition(SpanningSets sets);

  /// Parses "1,2|3,4" (1-based indices, '|' between blocks).
  static SubspacePartition parse(std::string_view text, std::size_t dimension);

  std::size_t block_count() const noexcept;
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t covered_dimension() const noexcept { return covered_; }
  /// Sum of block dimensions equals the Hilbert dimension.
  bool is_full() const noexcept;

  /// Squared norms of the projections of psi onto each block.
  std::vector<double> block_probabilities(const QuantumState& psi) const;

 private:
  std::variant<IndexBlocks, SpanningSets> blocks_;
  std::size_t dim_ = 0;
  std::size_t covered_ = 0;
};

/// (N|psi_1|^2, ..., N|psi_N|^2).
CountingVector weights_in_basis(const QuantumState& psi);

/// Effective number of basis states occupied by psi.
double count_identities(const QuantumState& psi, const CountingFunction& f);

/// Subset weights w_j = N |<j|psi>|^2; no sum constraint.
GeneralWeights subset_weights(const QuantumState& psi, const OrthonormalSet& subset);

/// Sum of f over the subset weights.
double count_subset(const QuantumState& psi, const OrthonormalSet& subset,
                    const CountingFunction& f);

/// Checks, for each completion c, that the count over the basis subset ∪ c
/// equals count_subset(subset) + count_subset(c), and that both completions
/// assign the subset the same count (to kTolEval). Throws ConstraintError if
/// a completion does not extend the subset to an orthonormal basis.
bool check_completion_independence(const QuantumState& psi, const OrthonormalSet& subset,
                                   const OrthonormalSet& completion_a,
                                   const OrthonormalSet& completion_b,
                                   const CountingFunction& f);

/// Effective number of subspaces: W = M * (p_1..p_M) over the M blocks of a
/// full decomposition. Throws std::invalid_argument for partial ones.
double count_subspaces(const QuantumState& psi, const SubspacePartition& partition,
                       const CountingFunction& f);

/// Partial decompositions: w_m = total_blocks * p_m evaluated as general
/// weights, where total_blocks is the block count of the intended full
/// decomposition. The overload without it completes the partition with
/// one-dimensional blocks.
double count_subspace_subset(const QuantumState& psi, const SubspacePartition& partition,
                             std::size_t total_blocks, const CountingFunction& f);
double count_subspace_subset(const QuantumState& psi, const SubspacePartition& partition,
                             const CountingFunction& f);

}  // namespace effnum
