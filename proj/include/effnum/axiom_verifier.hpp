#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effnum/measures.hpp"
#include "effnum/rng.hpp"
#include "effnum/tolerances.hpp"
#include "effnum/weights.hpp"

namespace effnum {

enum class Axiom {
  Additivity,
  Symmetry,
  ContinuityProbe,
  Monotonicity,
  BoundaryB1,
  BoundaryB2,
  Sandwich,
  SeparabilityReconstruction,
};

inline constexpr std::array<Axiom, 8> kAllAxioms = {
    Axiom::Additivity,  Axiom::Symmetry,   Axiom::ContinuityProbe, Axiom::Monotonicity,
    Axiom::BoundaryB1,  Axiom::BoundaryB2, Axiom::Sandwich,        Axiom::SeparabilityReconstruction,
};

std::string_view axiom_name(Axiom a);

/// Inputs that produced a violation, the measure values observed on them and
/// the size of the violation.
struct Witness {
  std::vector<std::vector<double>> inputs;
  std::vector<double> observed;
  double violation = 0.0;
};

enum class VerdictStatus { Passed, Failed, Inconclusive };

std::string_view status_name(VerdictStatus s);

struct AxiomVerdict {
  Axiom axiom = Axiom::Additivity;
  VerdictStatus status = VerdictStatus::Passed;
  /// Worst violation over all trials; ties go to the lexicographically
  /// smallest input. Present whenever at least one trial was evaluated.
  std::optional<Witness> witness;
  /// First failing fixed small-dimension probe, if any. These probes are
  /// part of every trial set and give hand-checkable counterexamples.
  std::optional<Witness> canonical;
  /// Violation threshold the verdict was decided against.
  double threshold = kTolAxiom;
  std::size_t trials = 0;
  std::string note;

  bool passed() const noexcept { return status == VerdictStatus::Passed; }
};

struct TrialConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  std::size_t max_dim = 64;
  std::vector<double> alpha_grid = {1.0, 0.75, 0.5, 0.25, 0.1, 0.01, 1e-3, 1e-4};
  /// Size of the weight transfer used by the continuity probe.
  double continuity_delta = 1e-6;
  /// Largest accepted response to a continuity_delta transfer. The default
  /// admits Hoelder-1/4 counting functions such as alpha:0.25.
  double continuity_bound = 0.1;
  double tolerance = kTolAxiom;
  /// Abscissae in [0, 1] at which counting functions are extracted.
  std::vector<double> extraction_grid = default_extraction_grid();

  /// Throws std::invalid_argument unless trials >= 1, max_dim >= 2,
  /// continuity_delta > 0 and every alpha lies in (0, 1].
  void validate() const;

  /// 0, 0.01, ..., 1.
  static std::vector<double> default_extraction_grid();
};

/// Random dimension uniform on [min_dim, max_dim].
std::size_t random_dimension(Rng& rng, std::size_t min_dim, std::size_t max_dim);

/// Exponential(1) samples scaled to sum N. One draw in four additionally
/// zeroes a random subset of entries (at least one entry stays positive) so
/// that exact-zero weights occur.
CountingVector random_counting_vector(Rng& rng, std::size_t dim);

AxiomVerdict check_additivity(const Measure& m, const TrialConfig& cfg);
AxiomVerdict check_symmetry(const Measure& m, const TrialConfig& cfg);
AxiomVerdict check_monotonicity(const Measure& m, const TrialConfig& cfg);
AxiomVerdict check_boundary_b1(const Measure& m, const TrialConfig& cfg);
AxiomVerdict check_boundary_b2(const Measure& m, const TrialConfig& cfg);
std::array<AxiomVerdict, 2> check_boundary(const Measure& m, const TrialConfig& cfg);

/// Falsification probe only: a passing verdict does not establish
/// continuity. Perturbs random vectors by a transfer of continuity_delta
/// between two entries and fails if the measure responds by more than
/// continuity_bound.
AxiomVerdict check_continuity_probe(const Measure& m, const TrialConfig& cfg);

/// n_star(W) - tol <= m(W) <= n_plus(W) + tol.
AxiomVerdict check_sandwich(const Measure& m, const TrialConfig& cfg);

/// Extracts a counting function from `m`, then checks m(W) against the sum
/// of the recovered function on vectors whose sub-unit weights lie on the
/// extraction grid. Also checks that vectors sharing their sub-unit entries
/// but differing above 1 get equal values.
AxiomVerdict check_separability(const Measure& m, const TrialConfig& cfg);

/// All eight verdicts in kAllAxioms order.
std::vector<AxiomVerdict> verify_all(const Measure& m, const TrialConfig& cfg);

struct RangeSweep {
  double lo = 0.0;  ///< value at alpha = 1
  double hi = 0.0;  ///< largest value over the sweep
  double n_star = 0.0;
  double n_plus = 0.0;
  /// (alpha, n_alpha(W)) by decreasing alpha.
  std::vector<std::pair<double, double>> sweep;
  /// Values nonincreasing in alpha (to kTolEval).
  bool monotone = true;
};

/// Evaluates the alpha family over cfg.alpha_grid (alpha = 1 is always
/// included). The sweep spans the attainable range [n_star, n_plus) of
/// effective numbers on W.
RangeSweep check_range_interval(const CountingVector& w, const TrialConfig& cfg);

}  // namespace effnum
