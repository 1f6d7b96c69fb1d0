#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "effnum/eigensolver.hpp"
#include "effnum/measures.hpp"
#include "effnum/quantum.hpp"

namespace effnum {

enum class Boundary { Open, Periodic };

/// One-dimensional tight-binding chain with uniform on-site disorder in
/// [-disorder_strength, disorder_strength].
struct LatticeModel {
  std::size_t n_sites = 64;
  double hopping = -1.0;
  double disorder_strength = 0.0;
  std::uint64_t seed = 0;
  Boundary boundary = Boundary::Open;

  /// Throws std::invalid_argument unless n_sites >= 2 and the disorder
  /// strength is finite and nonnegative.
  void validate() const;
};

/// Tridiagonal Hamiltonian, plus the corner coupling for periodic chains.
struct LatticeHamiltonian {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  double corner = 0.0;
  bool periodic = false;

  SymmetricMatrix dense() const;
};

LatticeHamiltonian build_model(const LatticeModel& cfg);

/// Open chains use the tridiagonal solver directly; periodic ones go
/// through the dense path.
EigenSystem eigensolve(const LatticeHamiltonian& h);

/// Effective fractions of a state in the site basis, keyed
///   f_star, f_alpha:0.25, f_alpha:0.5, f_alpha:0.75, f_plus,
///   participation_fraction, exp_shannon_fraction
MeasureReport state_measures(const QuantumState& psi);

/// The alpha values reported by state_measures.
const std::vector<double>& standard_alpha_grid();

enum class Band { Ground, Mid };

/// Ground: index 0. Mid: 1-based index ceil(N/2), i.e. (N + 1) / 2 - 1.
std::size_t band_index(std::size_t n_sites, Band band);

QuantumState eigenstate(const EigenSystem& es, std::size_t k);

struct ScalingPoint {
  std::size_t n_sites = 0;
  double value = 0.0;
  double std_error = 0.0;
};

struct ScalingCurve {
  std::string measure;
  double disorder_strength = 0.0;
  std::size_t ensemble = 0;
  std::vector<ScalingPoint> points;
};

/// For each size, averages state_measures of the selected eigenstate over
/// `ensemble` disorder realizations with seeds base.seed + r. Returns one
/// curve per measure, in state_measures order. Sizes must be strictly
/// increasing and ensemble >= 1 (std::invalid_argument otherwise).
std::vector<ScalingCurve> scaling_study(const LatticeModel& base,
                                        const std::vector<std::size_t>& sizes,
                                        std::size_t ensemble, Band band);

/// Throws std::out_of_range when no curve carries `measure`.
const ScalingCurve& find_curve(const std::vector<ScalingCurve>& curves,
                               const std::string& measure);

}  // namespace effnum
