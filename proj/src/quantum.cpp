#include "effnum/quantum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "effnum/errors.hpp"
#include "effnum/measures.hpp"
#include "effnum/tolerances.hpp"

namespace effnum {
namespace {

double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

void require_orthonormal(const std::vector<Amplitudes>& vs, const char* what) {
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t k = j; k < vs.size(); ++k) {
      const Complex ip = inner(vs[j], vs[k]);
      const double expected = j == k ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kTolOrtho) {
        throw ConstraintError(std::string(what) + ": vectors " + std::to_string(j) + " and " +
                              std::to_string(k) + " are not orthonormal");
      }
    }
  }
}

std::vector<double> squared_overlaps(const QuantumState& psi, const OrthonormalSet& set) {
  if (set.dimension() != psi.dimension()) {
    throw std::invalid_argument("dimension mismatch: state has " +
                                std::to_string(psi.dimension()) + ", vectors have " +
                                std::to_string(set.dimension()));
  }
  std::vector<double> out;
  out.reserve(set.size());
  for (const Amplitudes& v : set.vectors()) out.push_back(std::norm(inner(v, psi.amplitudes())));
  return out;
}

}  // namespace

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

QuantumState::QuantumState(Amplitudes amplitudes, Renormalize renorm)
    : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw ConstraintError("QuantumState: dimension must be >= 1");
  for (const Complex& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ConstraintError("QuantumState: amplitudes must be finite");
    }
  }
  const double n2 = norm_squared(amps_);
  if (renorm == Renormalize::Yes) {
    if (!(n2 > 0.0)) throw ConstraintError("QuantumState: cannot renormalize the zero vector");
    const double scale = 1.0 / std::sqrt(n2);
    for (Complex& z : amps_) z *= scale;
  } else if (std::abs(n2 - 1.0) > kTolNorm) {
    throw ConstraintError("QuantumState: squared norm is " + std::to_string(n2) +
                          ", expected 1");
  }
}

OrthonormalSet::OrthonormalSet(std::vector<Amplitudes> vectors, std::size_t dimension)
    : vectors_(std::move(vectors)), dim_(dimension) {
  if (dim_ == 0) throw ConstraintError("OrthonormalSet: dimension must be >= 1");
  if (vectors_.size() > dim_) {
    throw ConstraintError("OrthonormalSet: more vectors than the space dimension");
  }
  for (const Amplitudes& v : vectors_) {
    if (v.size() != dim_) throw ConstraintError("OrthonormalSet: vector length mismatch");
  }
  require_orthonormal(vectors_, "OrthonormalSet");
}

OrthonormalSet OrthonormalSet::standard_basis(std::size_t dimension) {
  std::vector<Amplitudes> vs(dimension, Amplitudes(dimension, 0.0));
  for (std::size_t i = 0; i < dimension; ++i) vs[i][i] = 1.0;
  return OrthonormalSet(std::move(vs), dimension);
}

OrthonormalSet join(const OrthonormalSet& a, const OrthonormalSet& b) {
  if (a.dimension() != b.dimension()) throw ConstraintError("join: dimension mismatch");
  std::vector<Amplitudes> vs = a.vectors();
  vs.insert(vs.end(), b.vectors().begin(), b.vectors().end());
  return OrthonormalSet(std::move(vs), a.dimension());
}

SubspacePartition::SubspacePartition(IndexBlocks blocks, std::size_t dimension) : dim_(dimension) {
  if (dimension == 0) throw ConstraintError("SubspacePartition: dimension must be >= 1");
  if (blocks.empty()) throw ConstraintError("SubspacePartition: no blocks");
  std::vector<bool> seen(dimension, false);
  for (const auto& block : blocks) {
    if (block.empty()) throw ConstraintError("SubspacePartition: empty block");
    for (std::size_t i : block) {
      if (i >= dimension) throw ConstraintError("SubspacePartition: index out of range");
      if (seen[i]) throw ConstraintError("SubspacePartition: blocks overlap");
      seen[i] = true;
      ++covered_;
    }
  }
  blocks_ = std::move(blocks);
}

SubspacePartition::SubspacePartition(SpanningSets sets) {
  if (sets.empty()) throw ConstraintError("SubspacePartition: no blocks");
  dim_ = sets.front().dimension();
  for (std::size_t a = 0; a < sets.size(); ++a) {
    if (sets[a].dimension() != dim_) throw ConstraintError("SubspacePartition: dimension mismatch");
    if (sets[a].size() == 0) throw ConstraintError("SubspacePartition: empty block");
    covered_ += sets[a].size();
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      for (const Amplitudes& u : sets[a].vectors()) {
        for (const Amplitudes& v : sets[b].vectors()) {
          if (std::abs(inner(u, v)) > kTolOrtho) {
            throw ConstraintError("SubspacePartition: blocks " + std::to_string(a) + " and " +
                                  std::to_string(b) + " are not orthogonal");
          }
        }
      }
    }
  }
  if (covered_ > dim_) throw ConstraintError("SubspacePartition: block dimensions exceed N");
  blocks_ = std::move(sets);
}

SubspacePartition SubspacePartition::parse(std::string_view text, std::size_t dimension) {
  IndexBlocks blocks(1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == ' ' || c == '\t') {
      ++pos;
    } else if (c == '|') {
      blocks.emplace_back();
      ++pos;
    } else if (c == ',') {
      ++pos;
    } else {
      std::size_t value = 0;
      const auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc() || value == 0) {
        throw ParseError("partition: expected a 1-based index at offset " + std::to_string(pos),
                         0);
      }
      blocks.back().push_back(value - 1);
      pos = static_cast<std::size_t>(end - text.data());
    }
  }
  return SubspacePartition(std::move(blocks), dimension);
}

std::size_t SubspacePartition::block_count() const noexcept {
  return std::visit([](const auto& b) { return b.size(); }, blocks_);
}

bool SubspacePartition::is_full() const noexcept { return covered_ == dim_; }

std::vector<double> SubspacePartition::block_probabilities(const QuantumState& psi) const {
  if (psi.dimension() != dim_) throw std::invalid_argument("partition: dimension mismatch");
  std::vector<double> p;
  if (const auto* idx = std::get_if<IndexBlocks>(&blocks_)) {
    for (const auto& block : *idx) {
      double s = 0.0;
      for (std::size_t i : block) s += std::norm(psi.amplitudes()[i]);
      p.push_back(s);
    }
  } else {
    for (const OrthonormalSet& set : std::get<SpanningSets>(blocks_)) {
      const auto overlaps = squared_overlaps(psi, set);
      p.push_back(std::accumulate(overlaps.begin(), overlaps.end(), 0.0));
    }
  }
  return p;
}

CountingVector weights_in_basis(const QuantumState& psi) {
  const auto n = static_cast<double>(psi.dimension());
  std::vector<double> w;
  w.reserve(psi.dimension());
  for (const Complex& z : psi.amplitudes()) w.push_back(n * std::norm(z));
  return CountingVector(std::move(w));
}

double count_identities(const QuantumState& psi, const CountingFunction& f) {
  return eval_separable(f, weights_in_basis(psi));
}

GeneralWeights subset_weights(const QuantumState& psi, const OrthonormalSet& subset) {
  auto w = squared_overlaps(psi, subset);
  const auto n = static_cast<double>(psi.dimension());
  for (double& x : w) x *= n;
  return GeneralWeights(std::move(w));
}

double count_subset(const QuantumState& psi, const OrthonormalSet& subset,
                    const CountingFunction& f) {
  return eval_separable(f, subset_weights(psi, subset));
}

bool check_completion_independence(const QuantumState& psi, const OrthonormalSet& subset,
                                   const OrthonormalSet& completion_a,
                                   const OrthonormalSet& completion_b,
                                   const CountingFunction& f) {
  const double part = count_subset(psi, subset, f);
  bool ok = true;
  for (const OrthonormalSet* completion : {&completion_a, &completion_b}) {
    const OrthonormalSet basis = join(subset, *completion);
    if (basis.size() != basis.dimension()) {
      throw ConstraintError("completion does not extend the subset to a basis");
    }
    const double full = eval_separable(f, subset_weights(psi, basis));
    const double rest = count_subset(psi, *completion, f);
    ok = ok && std::abs(full - (part + rest)) <= kTolEval;
    ok = ok && std::abs((full - rest) - part) <= kTolEval;
  }
  return ok;
}

double count_subspaces(const QuantumState& psi, const SubspacePartition& partition,
                       const CountingFunction& f) {
  if (!partition.is_full()) {
    throw std::invalid_argument(
        "count_subspaces: partition does not cover the space; use count_subspace_subset");
  }
  auto p = partition.block_probabilities(psi);
  const auto m = static_cast<double>(p.size());
  for (double& x : p) x *= m;
  return eval_separable(f, CountingVector(std::move(p)));
}

double count_subspace_subset(const QuantumState& psi, const SubspacePartition& partition,
                             std::size_t total_blocks, const CountingFunction& f) {
  if (total_blocks < partition.block_count()) {
    throw std::invalid_argument("count_subspace_subset: total_blocks below block count");
  }
  auto p = partition.block_probabilities(psi);
  const auto m = static_cast<double>(total_blocks);
  for (double& x : p) x *= m;
  return eval_separable(f, GeneralWeights(std::move(p)));
}

double count_subspace_subset(const QuantumState& psi, const SubspacePartition& partition,
                             const CountingFunction& f) {
  const std::size_t missing = partition.dimension() - partition.covered_dimension();
  return count_subspace_subset(psi, partition, partition.block_count() + missing, f);
}

}  // namespace effnum
