#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "effnum/axiom_verifier.hpp"
#include "effnum/errors.hpp"
#include "effnum/measures.hpp"
#include "effnum/rng.hpp"
#include "effnum/tolerances.hpp"

using namespace effnum;
using doctest::Approx;

namespace {

// Alpha-family kinds used by the property tests below.
std::vector<CountingFunction> enf_kinds() {
  return {CountingFunction::minimal(), CountingFunction::alpha(0.1),
          CountingFunction::alpha(0.25), CountingFunction::alpha(0.5),
          CountingFunction::alpha(0.75), CountingFunction::alpha(1.0)};
}

}  // namespace

TEST_CASE("CountingVector enforces its invariants") {
  CHECK_NOTHROW(CountingVector({1.0, 1.0, 1.0}));
  CHECK_NOTHROW(CountingVector({3.0, 0.0, 0.0}));
  CHECK_THROWS_AS(CountingVector(std::vector<double>{}), ConstraintError);
  CHECK_THROWS_AS(CountingVector({1.0, 2.0}), ConstraintError);
  CHECK_THROWS_AS(CountingVector({-0.5, 2.5}), ConstraintError);
  CHECK_THROWS_AS(CountingVector({NAN, 1.0}), ConstraintError);
  // within 1e-9 * N of the target sum
  CHECK_NOTHROW(CountingVector({1.0 + 1e-10, 1.0}));
  CHECK_THROWS_AS(CountingVector({1.0 + 1e-8, 1.0}), ConstraintError);

  SUBCASE("renormalize is opt-in") {
    const CountingVector w({1.0, 3.0}, Renormalize::Yes);
    CHECK(w[0] == Approx(0.5));
    CHECK(w[1] == Approx(1.5));
    CHECK_THROWS_AS(CountingVector({0.0, 0.0}, Renormalize::Yes), ConstraintError);
  }
}

TEST_CASE("ProbabilityVector and conversion to counting form") {
  const ProbabilityVector p({0.25, 0.75});
  const auto w = CountingVector::from_probabilities(p);
  CHECK(w[0] == 0.5);
  CHECK(w[1] == 1.5);
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.6}), ConstraintError);
  CHECK_THROWS_AS(GeneralWeights({1.0, -1.0}), ConstraintError);
  CHECK_NOTHROW(GeneralWeights({5.0, 0.0, 7.0}));
}

TEST_CASE("counting functions") {
  const auto star = CountingFunction::minimal();
  CHECK(star(0.0) == 0.0);
  CHECK(star(0.3) == 0.3);
  CHECK(star(1.0) == 1.0);
  CHECK(star(7.0) == 1.0);

  const auto a = CountingFunction::alpha(0.5);
  CHECK(a(0.0) == 0.0);
  CHECK(a(0.25) == Approx(0.5));
  CHECK(a(4.0) == 1.0);
  CHECK(a.name() == "alpha:0.5");

  const auto plus = CountingFunction::support_plus();
  CHECK_FALSE(plus.is_enf());
  CHECK(plus(0.0) == 0.0);
  CHECK(plus(1e-300) == 1.0);

  CHECK_THROWS_AS(CountingFunction::alpha(0.0), ConstraintError);
  CHECK_THROWS_AS(CountingFunction::alpha(1.5), ConstraintError);
}

TEST_CASE("tabulated counting functions validate their knots") {
  const auto t = CountingFunction::tabulated({{0, 0}, {0.5, 0.75}, {1, 1}, {2, 1}});
  CHECK(t(0.25) == Approx(0.375));
  CHECK(t(0.75) == Approx(0.875));
  CHECK(t(1.5) == 1.0);
  CHECK(t(10.0) == 1.0);

  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0.1}, {1, 1}}), ConstraintError);
  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0}, {0.5, 0.2}, {1, 1}}), ConstraintError);
  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0}, {0.5, 0.6}, {0.4, 0.7}, {1, 1}}),
                  ConstraintError);
  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0}, {0.5, 0.9}, {1, 0.8}}), ConstraintError);
  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0}, {0.5, 0.7}}), ConstraintError);
  CHECK_THROWS_AS(CountingFunction::tabulated({{0, 0}, {1, 1}, {2, 1.2}}), ConstraintError);
}

TEST_CASE("eval_separable examples") {
  CHECK(eval_separable(CountingFunction::minimal(), CountingVector({1, 1, 1})) == 3.0);
  CHECK(eval_separable(CountingFunction::minimal(), CountingVector({4, 0, 0, 0})) == 1.0);
  CHECK(eval_separable(CountingFunction::alpha(0.5), CountingVector({1.5, 0.5})) ==
        Approx(1.0 + std::sqrt(0.5)).epsilon(1e-12));
  CHECK(eval_separable(CountingFunction::minimal(), CountingVector({1.5, 0.5})) == 1.5);
  CHECK(eval_separable(CountingFunction::minimal(), GeneralWeights({5.0, 0.2})) ==
        Approx(1.2));
}

TEST_CASE("effective_number_min, support_count, participation, exp_shannon") {
  CHECK(effective_number_min(CountingVector({1, 1, 1, 1})) == 4.0);
  CHECK(effective_number_min(CountingVector({3, 0, 0})) == 1.0);
  // 1 + 0.75 + 0.25
  CHECK(effective_number_min(CountingVector({2, 0.75, 0.25})) == 2.0);

  CHECK(support_count(GeneralWeights({1, 1, 0, 2})) == 3.0);
  CHECK(support_count(GeneralWeights({0, 0})) == 0.0);
  CHECK(support_count(CountingVector({4, 0, 0, 0})) == 1.0);

  CHECK(participation_number(CountingVector(std::vector<double>(5, 1.0))) == Approx(5.0));
  CHECK(participation_number(CountingVector({2, 0})) == 1.0);
  CHECK(participation_number(CountingVector({2, 0, 1})) == Approx(9.0 / 5.0).epsilon(1e-15));

  CHECK(exp_shannon(CountingVector({1, 1, 1, 1})) == Approx(4.0).epsilon(1e-14));
  CHECK(exp_shannon(CountingVector({2, 0})) == 1.0);
  const double h = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(exp_shannon(CountingVector({1.5, 0.5})) == Approx(std::exp(h)).epsilon(1e-14));
  CHECK(exp_shannon(CountingVector({1.5, 0.5})) == Approx(1.7548).epsilon(1e-4));
}

TEST_CASE("concat") {
  CHECK(concat(CountingVector({2, 0}), CountingVector({1})) == CountingVector({2, 0, 1}));
  CHECK(concat(CountingVector({1, 1}), CountingVector({1, 1})) == CountingVector({1, 1, 1, 1}));
  CHECK(concat(GeneralWeights({0.5}), GeneralWeights({7.0})) == GeneralWeights({0.5, 7.0}));
}

TEST_CASE("elementary_transfer") {
  CHECK(elementary_transfer(CountingVector({0.5, 1.5}), 0, 1, 0.5) == CountingVector({0, 2}));
  CHECK(elementary_transfer(CountingVector({1, 1}), 0, 1, 0.0) == CountingVector({1, 1}));
  CHECK_THROWS_WITH_AS(elementary_transfer(CountingVector({0.5, 1.5}), 1, 0, 0.1),
                       "elementary_transfer: requires w_i <= w_j", std::invalid_argument);
  CHECK_THROWS_WITH_AS(elementary_transfer(CountingVector({0.5, 1.5}), 0, 1, 0.6),
                       "elementary_transfer: requires eps <= w_i", std::invalid_argument);
  CHECK_THROWS_AS(elementary_transfer(CountingVector({1, 1}), 0, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(elementary_transfer(CountingVector({1, 1}), 0, 1, -0.1),
                  std::invalid_argument);
}

TEST_CASE("co_enf_value") {
  CHECK(co_enf_value(CountingFunction::minimal(), CountingVector({3, 0, 0})) == 2.0);
  CHECK(co_enf_value(CountingFunction::minimal(), CountingVector({1, 1})) == 0.0);
  CHECK(co_enf_value(CountingFunction::alpha(0.5), CountingVector({1.5, 0.5})) ==
        Approx(2.0 - 1.0 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(co_enf_value(CountingFunction::alpha(0.5), CountingVector({1.5, 0.5})) ==
        Approx(0.2929).epsilon(1e-4));
}

TEST_CASE("effective_fraction") {
  const auto star = CountingFunction::minimal();
  CHECK(effective_fraction(star, ProbabilityVector(std::vector<double>(8, 0.125))) == 1.0);
  std::vector<double> delta(10, 0.0);
  delta[0] = 1.0;
  CHECK(effective_fraction(star, ProbabilityVector(delta)) == Approx(0.1).epsilon(1e-15));
  CHECK(effective_fraction(star, ProbabilityVector({0.5, 0.5, 0, 0})) == 0.5);
  // sum min(p, 1/N)
  CHECK(effective_fraction(star, ProbabilityVector({0.3, 0.7})) == Approx(0.8));
}

TEST_CASE("extract_counting_function recovers the generating function") {
  const Measure n_star = separable_measure(CountingFunction::minimal());
  const Measure n_half = separable_measure(CountingFunction::alpha(0.5));

  // n_star(0.3, 1.7) - n_star(1, 1) / 2 = 1.3 - 1
  const auto t1 = extract_counting_table(n_star, {0.3});
  CHECK(t1(0.3) == Approx(0.3).epsilon(1e-12));
  CHECK(t1(1.0) == 1.0);
  CHECK(t1.tail == 1.0);

  const auto t2 = extract_counting_function(n_half, {0.25, 0.5, 1.0});
  CHECK(t2(0.25) == Approx(0.5).epsilon(1e-12));
  CHECK(t2(3.0) == 1.0);

  SUBCASE("grid outside [0,1] is rejected") {
    CHECK_THROWS_AS(extract_counting_table(n_star, {1.5}), std::invalid_argument);
  }
  SUBCASE("evaluation errors propagate") {
    const Measure broken = [](const CountingVector&) -> double {
      throw std::runtime_error("boom");
    };
    CHECK_THROWS_AS(extract_counting_table(broken, {0.5}), std::runtime_error);
  }
  SUBCASE("non-concave recovery is a construction error") {
    CHECK_THROWS_AS(extract_counting_function(participation_number, {0.0, 0.1, 0.2, 0.5, 1.0}),
                    ConstraintError);
  }
}

TEST_CASE("measure_by_name") {
  CHECK(measure_by_name("n_star")(CountingVector({1.5, 0.5})) == 1.5);
  CHECK(measure_by_name("alpha:0.5")(CountingVector({0.25, 1.75})) == Approx(1.5));
  CHECK(measure_by_name("participation")(CountingVector({2, 0})) == 1.0);
  CHECK_THROWS_AS(measure_by_name("nope"), std::invalid_argument);
  CHECK_THROWS_AS(measure_by_name("alpha:x"), std::invalid_argument);
  CHECK_THROWS_AS(measure_by_name("alpha:0"), ConstraintError);
}

// Properties over random counting vectors.

TEST_CASE("property: sandwich, bounds, duality, gauge, symmetry") {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const auto w = random_counting_vector(rng, random_dimension(rng, 1, 40));
    const double n = static_cast<double>(w.size());
    const double lo = effective_number_min(w);
    const double hi = support_count(w);

    std::vector<double> shuffled(w.weights().begin(), w.weights().end());
    rng.shuffle(shuffled.begin(), shuffled.end());
    const CountingVector permuted(shuffled);

    for (const auto& f : enf_kinds()) {
      const double v = eval_separable(f, w);
      CHECK(v >= lo - kTolEval);
      CHECK(v <= hi + kTolEval);
      CHECK(v >= 1.0 - kTolEval);
      CHECK(v <= n + kTolEval);
      CHECK(std::abs(co_enf_value(f, w) + v - n) <= kTolEval);
      // bitwise: ascending-order accumulation
      CHECK(eval_separable(f, permuted) == v);

      for (double k : {-10.0, 1.0, 7.0}) {
        double shifted = 0.0;
        for (double x : w.weights()) shifted += f(x) + k * (1.0 - x);
        CHECK(std::abs(shifted - v) <= 1e-8);
      }
    }
  }
}

TEST_CASE("property: additivity and transfer monotonicity") {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_counting_vector(rng, random_dimension(rng, 1, 30));
    const auto b = random_counting_vector(rng, random_dimension(rng, 1, 30));
    const auto joined = concat(a, b);
    CHECK(joined.size() == a.size() + b.size());

    std::size_t i = rng.index(joined.size());
    std::size_t j = (i + 1 + rng.index(joined.size() - 1)) % joined.size();
    if (joined[i] > joined[j]) std::swap(i, j);
    const auto moved = elementary_transfer(joined, i, j, rng.uniform() * joined[i]);

    for (const auto& f : enf_kinds()) {
      CHECK(std::abs(eval_separable(f, joined) - eval_separable(f, a) - eval_separable(f, b)) <=
            kTolEval);
      CHECK(eval_separable(f, moved) <= eval_separable(f, joined) + kTolEval);
    }
  }
}

TEST_CASE("property: counting-function values stay in [0, 1] and alpha-monotonicity") {
  Rng rng(3);
  for (int t = 0; t < 5000; ++t) {
    const double w = rng.exponential() * 2.0;
    for (const auto& f : enf_kinds()) {
      CHECK(1.0 - f(w) >= 0.0);
      CHECK(1.0 - f(w) <= 1.0);
    }
  }
  const std::vector<double> alphas = {1.0, 0.5, 0.25, 0.1, 1e-2, 1e-3, 1e-4, 1e-6};
  for (int t = 0; t < 500; ++t) {
    const auto w = random_counting_vector(rng, random_dimension(rng, 1, 20));
    double prev = 0.0;
    for (double a : alphas) {
      const double v = eval_separable(CountingFunction::alpha(a), w);
      CHECK(v >= prev - kTolEval);
      prev = v;
    }
  }
  // With only sub-unit nonzero weights besides ones, alpha -> 0 approaches the support count.
  const CountingVector w({0.2, 0.3, 0.5, 4.0, 0.0});
  CHECK(eval_separable(CountingFunction::alpha(1e-9), w) ==
        Approx(support_count(w)).epsilon(1e-7));
}
