#include "effnum/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "effnum/rng.hpp"

namespace effnum {

void LatticeModel::validate() const {
  if (n_sites < 2) throw std::invalid_argument("LatticeModel: n_sites must be >= 2");
  if (!std::isfinite(hopping)) throw std::invalid_argument("LatticeModel: hopping not finite");
  if (!(disorder_strength >= 0.0) || !std::isfinite(disorder_strength)) {
    throw std::invalid_argument("LatticeModel: disorder_strength must be finite and >= 0");
  }
}

SymmetricMatrix LatticeHamiltonian::dense() const {
  const std::size_t n = diagonal.size();
  SymmetricMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = diagonal[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = off_diagonal[i];
    h(i + 1, i) = off_diagonal[i];
  }
  if (periodic) {
    h(0, n - 1) += corner;
    h(n - 1, 0) += corner;
  }
  return h;
}

LatticeHamiltonian build_model(const LatticeModel& cfg) {
  cfg.validate();
  LatticeHamiltonian h;
  h.diagonal.resize(cfg.n_sites, 0.0);
  if (cfg.disorder_strength > 0.0) {
    Rng rng(cfg.seed);
    for (double& x : h.diagonal) x = rng.uniform(-cfg.disorder_strength, cfg.disorder_strength);
  }
  h.off_diagonal.assign(cfg.n_sites - 1, cfg.hopping);
  h.periodic = cfg.boundary == Boundary::Periodic;
  h.corner = h.periodic ? cfg.hopping : 0.0;
  return h;
}

EigenSystem eigensolve(const LatticeHamiltonian& h) {
  if (h.periodic) return eigensolve(h.dense());
  return eigensolve_tridiagonal(h.diagonal, h.off_diagonal);
}

const std::vector<double>& standard_alpha_grid() {
  static const std::vector<double> grid = {0.25, 0.5, 0.75};
  return grid;
}

MeasureReport state_measures(const QuantumState& psi) {
  const CountingVector w = weights_in_basis(psi);
  const auto n = static_cast<double>(w.size());
  MeasureReport r;
  r.dimension = w.size();
  r.add("f_star", effective_number_min(w) / n);
  for (double a : standard_alpha_grid()) {
    r.add("f_alpha:" + format_param(a), eval_separable(CountingFunction::alpha(a), w) / n);
  }
  r.add("f_plus", support_count(w) / n);
  r.add("participation_fraction", participation_number(w) / n);
  r.add("exp_shannon_fraction", exp_shannon(w) / n);
  return r;
}

std::size_t band_index(std::size_t n_sites, Band band) {
  if (n_sites == 0) throw std::invalid_argument("band_index: empty spectrum");
  return band == Band::Ground ? 0 : (n_sites + 1) / 2 - 1;
}

QuantumState eigenstate(const EigenSystem& es, std::size_t k) {
  const auto& v = es.vectors.at(k);
  Amplitudes amps(v.begin(), v.end());
  // Eigenvectors are unit length to rounding; renormalizing absorbs it.
  return QuantumState(std::move(amps), Renormalize::Yes);
}

std::vector<ScalingCurve> scaling_study(const LatticeModel& base,
                                        const std::vector<std::size_t>& sizes,
                                        std::size_t ensemble, Band band) {
  if (sizes.empty()) throw std::invalid_argument("scaling_study: no sizes");
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    if (sizes[k] <= sizes[k - 1]) {
      throw std::invalid_argument("scaling_study: sizes must be strictly increasing");
    }
  }
  if (ensemble < 1) throw std::invalid_argument("scaling_study: ensemble must be >= 1");

  std::vector<ScalingCurve> curves;
  for (std::size_t n : sizes) {
    LatticeModel cfg = base;
    cfg.n_sites = n;
    cfg.validate();
    std::vector<double> sum;
    std::vector<double> sum_sq;
    MeasureReport last;
    // Accumulated in realization order so results are bitwise reproducible.
    for (std::size_t r = 0; r < ensemble; ++r) {
      cfg.seed = base.seed + r;
      const EigenSystem es = eigensolve(build_model(cfg));
      last = state_measures(eigenstate(es, band_index(n, band)));
      if (sum.empty()) {
        sum.assign(last.values.size(), 0.0);
        sum_sq.assign(last.values.size(), 0.0);
      }
      for (std::size_t m = 0; m < last.values.size(); ++m) {
        const double x = last.values[m].second;
        sum[m] += x;
        sum_sq[m] += x * x;
      }
    }
    if (curves.empty()) {
      for (const auto& [id, value] : last.values) {
        curves.push_back({id, base.disorder_strength, ensemble, {}});
      }
    }
    const auto count = static_cast<double>(ensemble);
    for (std::size_t m = 0; m < curves.size(); ++m) {
      const double mean = sum[m] / count;
      double err = 0.0;
      if (ensemble > 1) {
        const double var = std::max(0.0, (sum_sq[m] - count * mean * mean) / (count - 1.0));
        err = std::sqrt(var / count);
      }
      curves[m].points.push_back({n, mean, err});
    }
  }
  return curves;
}

const ScalingCurve& find_curve(const std::vector<ScalingCurve>& curves,
                               const std::string& measure) {
  for (const auto& c : curves) {
    if (c.measure == measure) return c;
  }
  throw std::out_of_range("no scaling curve for measure '" + measure + "'");
}

}  // namespace effnum
