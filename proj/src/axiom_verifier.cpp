#include "effnum/axiom_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>

namespace effnum {
namespace {

using Vec = std::vector<double>;

std::uint64_t axiom_seed(std::uint64_t seed, Axiom a) {
  // splitmix64 finalizer over (seed, axiom) keeps per-axiom streams disjoint.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(a) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vec flatten(const Witness& w) {
  Vec flat;
  for (const auto& in : w.inputs) flat.insert(flat.end(), in.begin(), in.end());
  return flat;
}

Vec to_vec(const CountingVector& w) { return Vec(w.weights().begin(), w.weights().end()); }

// Accumulates trials into a verdict: worst witness, first failing canonical
// probe, and evaluation failures.
class Recorder {
 public:
  Recorder(Axiom axiom, double threshold) {
    verdict_.axiom = axiom;
    verdict_.threshold = threshold;
  }

  void canonical(Witness w) {
    sanitize(w);
    if (!verdict_.canonical && w.violation > verdict_.threshold) verdict_.canonical = w;
    offer(std::move(w));
  }

  void offer(Witness w) {
    sanitize(w);
    ++verdict_.trials;
    auto& worst = verdict_.witness;
    if (!worst || w.violation > worst->violation ||
        (w.violation == worst->violation && flatten(w) < flatten(*worst))) {
      worst = std::move(w);
    }
  }

  void error(const std::exception& e) {
    inconclusive_ = true;
    verdict_.note = std::string("measure evaluation failed: ") + e.what();
  }

  void note(std::string text) {
    if (!verdict_.note.empty()) verdict_.note += "; ";
    verdict_.note += std::move(text);
  }

  AxiomVerdict finish() {
    if (inconclusive_) {
      verdict_.status = VerdictStatus::Inconclusive;
    } else if (verdict_.witness && verdict_.witness->violation > verdict_.threshold) {
      verdict_.status = VerdictStatus::Failed;
    } else {
      verdict_.status = VerdictStatus::Passed;
    }
    return std::move(verdict_);
  }

 private:
  static void sanitize(Witness& w) {
    if (std::isnan(w.violation)) w.violation = std::numeric_limits<double>::infinity();
  }

  AxiomVerdict verdict_;
  bool inconclusive_ = false;
};

// Runs `body` and converts measure failures into an inconclusive verdict.
AxiomVerdict run_guarded(Recorder& rec, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rec.error(e);
  }
  return rec.finish();
}

Witness additivity_witness(const Measure& m, const CountingVector& a, const CountingVector& b) {
  const double joint = m(concat(a, b));
  const double ma = m(a);
  const double mb = m(b);
  return {{to_vec(a), to_vec(b)}, {joint, ma, mb}, std::abs(joint - ma - mb)};
}

Witness difference_witness(const Measure& m, const CountingVector& before,
                           const CountingVector& after) {
  const double x = m(before);
  const double y = m(after);
  return {{to_vec(before), to_vec(after)}, {x, y}, std::abs(y - x)};
}

Witness sandwich_witness(const Measure& m, const CountingVector& w) {
  const double value = m(w);
  const double lo = effective_number_min(w);
  const double hi = support_count(w);
  const double violation = std::max({lo - value, value - hi, 0.0});
  return {{to_vec(w)}, {value, lo, hi}, violation};
}

}  // namespace

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Additivity:
      return "Additivity";
    case Axiom::Symmetry:
      return "Symmetry";
    case Axiom::ContinuityProbe:
      return "ContinuityProbe";
    case Axiom::Monotonicity:
      return "Monotonicity";
    case Axiom::BoundaryB1:
      return "BoundaryB1";
    case Axiom::BoundaryB2:
      return "BoundaryB2";
    case Axiom::Sandwich:
      return "Sandwich";
    case Axiom::SeparabilityReconstruction:
      return "SeparabilityReconstruction";
  }
  return "?";
}

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Passed:
      return "pass";
    case VerdictStatus::Failed:
      return "FAIL";
    case VerdictStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

void TrialConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
  if (max_dim < 2) throw std::invalid_argument("TrialConfig: max_dim must be >= 2");
  if (!(continuity_delta > 0.0)) {
    throw std::invalid_argument("TrialConfig: continuity_delta must be > 0");
  }
  if (!(continuity_bound >= 0.0)) {
    throw std::invalid_argument("TrialConfig: continuity_bound must be >= 0");
  }
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("TrialConfig: alpha grid values must lie in (0, 1]");
    }
  }
  for (double x : extraction_grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("TrialConfig: extraction grid must lie in [0, 1]");
    }
  }
}

std::vector<double> TrialConfig::default_extraction_grid() {
  std::vector<double> grid(101);
  for (int k = 0; k <= 100; ++k) grid[k] = k / 100.0;
  return grid;
}

std::size_t random_dimension(Rng& rng, std::size_t min_dim, std::size_t max_dim) {
  return min_dim + rng.index(max_dim - min_dim + 1);
}

CountingVector random_counting_vector(Rng& rng, std::size_t dim) {
  Vec w(dim);
  for (double& x : w) x = rng.exponential();
  if (dim > 1 && rng.index(4) == 0) {
    const std::size_t keep = rng.index(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != keep && rng.index(2) == 0) w[k] = 0.0;
    }
  }
  double total = 0.0;
  for (double x : w) total += x;
  const double scale = static_cast<double>(dim) / total;
  for (double& x : w) x *= scale;
  return CountingVector(std::move(w));
}

AxiomVerdict check_additivity(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::Additivity, cfg.tolerance);
  return run_guarded(rec, [&] {
    const std::vector<std::pair<Vec, Vec>> probes = {
        {{2, 0}, {1}}, {{1, 1}, {1}}, {{1.5, 0.5}, {2, 0}}, {{3, 0, 0}, {1, 1}}};
    for (const auto& [a, b] : probes) {
      rec.canonical(additivity_witness(m, CountingVector(a), CountingVector(b)));
    }
    Rng rng(axiom_seed(cfg.seed, Axiom::Additivity));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto a = random_counting_vector(rng, random_dimension(rng, 1, cfg.max_dim));
      const auto b = random_counting_vector(rng, random_dimension(rng, 1, cfg.max_dim));
      rec.offer(additivity_witness(m, a, b));
    }
  });
}

AxiomVerdict check_symmetry(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::Symmetry, cfg.tolerance);
  return run_guarded(rec, [&] {
    const std::vector<Vec> probes = {{2, 0, 1}, {1.5, 0.5}, {3, 0, 0}};
    for (const Vec& p : probes) {
      Vec swapped = p;
      std::swap(swapped[0], swapped[1]);
      rec.canonical(difference_witness(m, CountingVector(p), CountingVector(swapped)));
    }
    Rng rng(axiom_seed(cfg.seed, Axiom::Symmetry));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto w = random_counting_vector(rng, random_dimension(rng, 2, cfg.max_dim));
      Vec permuted = to_vec(w);
      rng.shuffle(permuted.begin(), permuted.end());
      rec.offer(difference_witness(m, w, CountingVector(std::move(permuted))));
    }
  });
}

AxiomVerdict check_monotonicity(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::Monotonicity, cfg.tolerance);
  auto transfer_witness = [&m](const CountingVector& before, const CountingVector& after) {
    Witness w = difference_witness(m, before, after);
    w.violation = std::max(0.0, w.observed[1] - w.observed[0]);
    return w;
  };
  return run_guarded(rec, [&] {
    const CountingVector ones({1, 1});
    rec.canonical(transfer_witness(ones, elementary_transfer(ones, 0, 1, 1.0)));
    const CountingVector split({1.5, 0.5});
    rec.canonical(transfer_witness(split, elementary_transfer(split, 1, 0, 0.5)));

    Rng rng(axiom_seed(cfg.seed, Axiom::Monotonicity));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto w = random_counting_vector(rng, random_dimension(rng, 2, cfg.max_dim));
      std::size_t i = rng.index(w.size());
      std::size_t j = rng.index(w.size() - 1);
      if (j >= i) ++j;
      if (w[i] > w[j]) std::swap(i, j);
      const double eps = rng.uniform() * w[i];
      rec.offer(transfer_witness(w, elementary_transfer(w, i, j, eps)));
    }
  });
}

AxiomVerdict check_boundary_b1(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::BoundaryB1, cfg.tolerance);
  return run_guarded(rec, [&] {
    for (std::size_t n = 1; n <= cfg.max_dim; ++n) {
      const CountingVector ones(Vec(n, 1.0));
      const double v = m(ones);
      rec.offer({{to_vec(ones)}, {v}, std::abs(v - static_cast<double>(n))});
    }
  });
}

AxiomVerdict check_boundary_b2(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::BoundaryB2, cfg.tolerance);
  return run_guarded(rec, [&] {
    for (std::size_t n = 1; n <= cfg.max_dim; ++n) {
      for (std::size_t k = 0; k < n; ++k) {
        Vec delta(n, 0.0);
        delta[k] = static_cast<double>(n);
        const CountingVector w(std::move(delta));
        const double v = m(w);
        rec.offer({{to_vec(w)}, {v}, std::abs(v - 1.0)});
      }
    }
  });
}

std::array<AxiomVerdict, 2> check_boundary(const Measure& m, const TrialConfig& cfg) {
  return {check_boundary_b1(m, cfg), check_boundary_b2(m, cfg)};
}

AxiomVerdict check_continuity_probe(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::ContinuityProbe, cfg.continuity_bound);
  rec.note("probe only: passing does not prove continuity");
  const double delta = cfg.continuity_delta;
  return run_guarded(rec, [&] {
    // Emptying a weight of size delta.
    const std::vector<std::pair<Vec, Vec>> probes = {
        {{delta, 2.0 - delta}, {0.0, 2.0}},
        {{delta, 1.0, 2.0 - delta}, {0.0, 1.0, 2.0}},
    };
    for (const auto& [before, after] : probes) {
      rec.canonical(difference_witness(m, CountingVector(before), CountingVector(after)));
    }
    Rng rng(axiom_seed(cfg.seed, Axiom::ContinuityProbe));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto w = random_counting_vector(rng, random_dimension(rng, 2, cfg.max_dim));
      const std::size_t i = rng.index(w.size());
      std::size_t j = rng.index(w.size() - 1);
      if (j >= i) ++j;
      const double amount = std::min(delta, w[i]);
      Vec moved = to_vec(w);
      moved[i] -= amount;
      moved[j] += amount;
      rec.offer(difference_witness(m, w, CountingVector(std::move(moved))));
    }
  });
}

AxiomVerdict check_sandwich(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::Sandwich, cfg.tolerance);
  return run_guarded(rec, [&] {
    const std::vector<Vec> probes = {{2, 0, 1}, {1.5, 0.5}, {3, 0, 0}, {1, 1}};
    for (const Vec& p : probes) rec.canonical(sandwich_witness(m, CountingVector(p)));
    Rng rng(axiom_seed(cfg.seed, Axiom::Sandwich));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      rec.offer(
          sandwich_witness(m, random_counting_vector(rng, random_dimension(rng, 1, cfg.max_dim))));
    }
  });
}

AxiomVerdict check_separability(const Measure& m, const TrialConfig& cfg) {
  cfg.validate();
  Recorder rec(Axiom::SeparabilityReconstruction, cfg.tolerance);
  return run_guarded(rec, [&] {
    const CountingTable table = extract_counting_table(m, cfg.extraction_grid);
    try {
      CountingFunction::tabulated(table.knots);
    } catch (const std::exception& e) {
      rec.note(std::string("recovered table is not a counting function: ") + e.what());
    }

    auto reconstruction = [&](const CountingVector& w) {
      const double value = m(w);
      double rebuilt = 0.0;
      Vec sorted = to_vec(w);
      std::sort(sorted.begin(), sorted.end());
      for (double x : sorted) rebuilt += table(x);
      return Witness{{to_vec(w)}, {value, rebuilt}, std::abs(value - rebuilt)};
    };

    const std::vector<Vec> probes = {{2, 0, 1}, {1.5, 0.5, 1}, {3, 0, 0}, {1, 1}};
    for (const Vec& p : probes) rec.canonical(reconstruction(CountingVector(p)));

    std::vector<double> grid;
    for (const Knot& k : table.knots) grid.push_back(k.w);

    // Vectors whose sub-unit weights sit on the grid; the deficit is spread
    // over entries >= 1, where the counting function is constant.
    Rng rng(axiom_seed(cfg.seed, Axiom::SeparabilityReconstruction));
    auto fill_above_one = [&rng](Vec& w, std::size_t count, double deficit) {
      Vec share(count);
      double total = 0.0;
      for (double& s : share) total += (s = rng.exponential());
      for (double s : share) w.push_back(1.0 + deficit * s / total);
    };

    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::size_t n = random_dimension(rng, 1, cfg.max_dim);
      const std::size_t below = rng.index(n);
      Vec low;
      double deficit = 0.0;
      for (std::size_t k = 0; k < below; ++k) {
        const double x = grid[rng.index(grid.size())];
        low.push_back(x);
        deficit += 1.0 - x;
      }
      Vec first = low;
      fill_above_one(first, n - below, deficit);
      rng.shuffle(first.begin(), first.end());
      const CountingVector w1(std::move(first));
      rec.offer(reconstruction(w1));

      // Same sub-unit entries, different entries above one.
      Vec second = low;
      fill_above_one(second, n - below, deficit);
      rng.shuffle(second.begin(), second.end());
      rec.offer(difference_witness(m, w1, CountingVector(std::move(second))));
    }
  });
}

std::vector<AxiomVerdict> verify_all(const Measure& m, const TrialConfig& cfg) {
  std::vector<AxiomVerdict> out;
  out.reserve(kAllAxioms.size());
  out.push_back(check_additivity(m, cfg));
  out.push_back(check_symmetry(m, cfg));
  out.push_back(check_continuity_probe(m, cfg));
  out.push_back(check_monotonicity(m, cfg));
  out.push_back(check_boundary_b1(m, cfg));
  out.push_back(check_boundary_b2(m, cfg));
  out.push_back(check_sandwich(m, cfg));
  out.push_back(check_separability(m, cfg));
  return out;
}

RangeSweep check_range_interval(const CountingVector& w, const TrialConfig& cfg) {
  cfg.validate();
  std::vector<double> alphas = cfg.alpha_grid;
  alphas.push_back(1.0);
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  RangeSweep out;
  out.n_star = effective_number_min(w);
  out.n_plus = support_count(w);
  for (double a : alphas) {
    const double v = eval_separable(CountingFunction::alpha(a), w);
    if (!out.sweep.empty() && v < out.sweep.back().second - kTolEval) out.monotone = false;
    out.sweep.emplace_back(a, v);
  }
  out.lo = out.sweep.front().second;
  out.hi = out.lo;
  for (const auto& [a, v] : out.sweep) out.hi = std::max(out.hi, v);
  return out;
}

}  // namespace effnum
