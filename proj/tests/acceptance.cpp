// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "effnum/axiom_verifier.hpp"
#include "effnum/cli.hpp"
#include "effnum/localization.hpp"
#include "effnum/measures.hpp"
#include "effnum/quantum.hpp"
#include "support/random_states.hpp"

using namespace effnum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome axiom_suite() {
  const auto t0 = Clock::now();
  TrialConfig cfg;
  cfg.trials = 10000;
  cfg.max_dim = 64;
  std::size_t verdicts = 0;
  std::string failed;
  for (const char* name : {"n_star", "alpha:0.25", "alpha:0.5", "alpha:0.75", "alpha:1.0"}) {
    for (const auto& v : verify_all(measure_by_name(name), cfg)) {
      ++verdicts;
      if (!v.passed()) failed += std::string(" ") + name + "/" + std::string(axiom_name(v.axiom));
    }
  }
  const double dt = seconds_since(t0);
  return {failed.empty() && verdicts == 40 && dt < 60.0,
          fmt("%zu verdicts, %.1f s%s", verdicts, dt, failed.empty() ? "" : (" failing:" + failed).c_str())};
}

Outcome counterexamples() {
  TrialConfig cfg;
  cfg.trials = 1000;

  const auto part = check_additivity(measure_by_name("participation"), cfg);
  const bool part_ok = !part.passed() && part.canonical &&
                       part.canonical->inputs == std::vector<std::vector<double>>{{2, 0}, {1}} &&
                       std::abs(part.canonical->violation - 0.2) <= 1e-12;

  // random pairs only, no fixed probes
  Rng rng(cfg.seed);
  std::size_t first_fail = 0;
  for (std::size_t t = 1; t <= 1000 && first_fail == 0; ++t) {
    const auto a = random_counting_vector(rng, random_dimension(rng, 1, cfg.max_dim));
    const auto b = random_counting_vector(rng, random_dimension(rng, 1, cfg.max_dim));
    if (std::abs(exp_shannon(concat(a, b)) - exp_shannon(a) - exp_shannon(b)) > kTolAxiom) {
      first_fail = t;
    }
  }

  const double delta = 1e-6;
  const double jump = std::abs(support_count(CountingVector({delta, 2.0 - delta})) -
                               support_count(CountingVector({0.0, 2.0})));
  const auto cont = check_continuity_probe(measure_by_name("n_plus"), cfg);
  const bool plus_ok = jump >= 1.0 - 1e-6 && !cont.passed();

  return {part_ok && first_fail > 0 && plus_ok,
          fmt("participation violation %.15g; exp_shannon fails at random pair %zu; n_plus jump %g",
              part.canonical ? part.canonical->violation : -1.0, first_fail, jump)};
}

Outcome sandwich_and_range() {
  TrialConfig cfg;
  Rng rng(20240601);
  std::size_t order_bad = 0, mono_bad = 0, lo_bad = 0, hi_bad = 0, excluded = 0;
  double worst_hi = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto w = random_counting_vector(rng, random_dimension(rng, 1, 64));
    const auto s = check_range_interval(w, cfg);
    for (const auto& [a, v] : s.sweep) {
      if (v < s.n_star - kTolAxiom || v > s.n_plus + kTolAxiom) ++order_bad;
    }
    if (!s.monotone) ++mono_bad;
    const bool all_outside =
        std::none_of(w.weights().begin(), w.weights().end(), [](double x) { return x > 0 && x < 1; });
    if (all_outside) {
      ++excluded;
      continue;
    }
    const auto at = [&s](double alpha) {
      for (const auto& [a, v] : s.sweep) {
        if (a == alpha) return v;
      }
      return std::nan("");
    };
    if (!(std::abs(at(1.0) - s.n_star) <= 1e-6)) ++lo_bad;
    const double gap = std::abs(s.n_plus - at(1e-4));
    worst_hi = std::max(worst_hi, gap);
    if (!(gap <= 1e-3)) ++hi_bad;
  }
  return {order_bad + mono_bad + lo_bad + hi_bad == 0,
          fmt("order %zu, monotone %zu, alpha=1 %zu, alpha=1e-4 %zu (worst gap %.3g) of 10000; "
              "%zu excluded",
              order_bad, mono_bad, lo_bad, hi_bad, worst_hi, excluded)};
}

Outcome separability() {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 1.0}) {
    const auto f = CountingFunction::alpha(alpha);
    const Measure black_box = [f](const CountingVector& w) { return eval_separable(f, w); };
    const auto table = extract_counting_table(black_box, grid);
    for (double x : grid) worst = std::max(worst, std::abs(table(x) - std::min(std::pow(x, alpha), 1.0)));
  }
  return {worst <= 1e-9, fmt("max deviation %.3g over 101 points x 3 exponents", worst)};
}

Outcome duality_and_gauge() {
  std::vector<CountingFunction> fs = {CountingFunction::minimal(), CountingFunction::support_plus()};
  for (double a : {0.25, 0.5, 0.75}) fs.push_back(CountingFunction::alpha(a));
  Rng rng(99);
  double dual = 0.0, gauge = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto w = random_counting_vector(rng, random_dimension(rng, 1, 64));
    const double n = static_cast<double>(w.size());
    for (const auto& f : fs) {
      const double v = eval_separable(f, w);
      dual = std::max(dual, std::abs(v + co_enf_value(f, w) - n));
      for (double k : {-10.0, 1.0, 7.0}) {
        double shifted = 0.0;
        for (double x : w.weights()) shifted += f(x) + k * (1.0 - x);
        gauge = std::max(gauge, std::abs(shifted - v));
      }
    }
  }
  return {dual <= 1e-9 && gauge <= 1e-8, fmt("duality %.3g, gauge %.3g", dual, gauge)};
}

Outcome quantum_counting() {
  Rng rng(4242);
  const auto star = CountingFunction::minimal();
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.index(15);
    const auto psi = testing::random_state(rng, n);
    const auto basis = testing::random_basis(rng, n);
    const std::size_t k = 1 + rng.index(n - 1);
    const std::vector<Amplitudes> sub(basis.begin(), basis.begin() + k);
    const std::vector<Amplitudes> rest(basis.begin() + k, basis.end());
    if (!check_completion_independence(psi, OrthonormalSet(sub, n), OrthonormalSet(rest, n),
                                       OrthonormalSet(testing::rotate_within_span(rng, rest), n),
                                       star)) {
      ++bad;
    }
  }
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.index(16);
    const auto psi = testing::random_state(rng, n);
    SubspacePartition::IndexBlocks singletons;
    for (std::size_t i = 0; i < n; ++i) singletons.push_back({i});
    worst = std::max(worst, std::abs(count_subspaces(psi, SubspacePartition(singletons, n), star) -
                                     count_identities(psi, star)));
  }
  return {bad == 0 && worst <= 1e-9,
          fmt("completion failures %zu of 1000; singleton vs basis %.3g", bad, worst)};
}

Outcome localization() {
  const auto t0 = Clock::now();
  const double limit = 1.0 - 1.0 / std::numbers::pi;
  LatticeModel clean;
  const auto ground = scaling_study(clean, {64, 128, 256}, 1, Band::Ground);
  double worst = 0.0;
  for (const auto& p : find_curve(ground, "f_star").points) {
    worst = std::max(worst, std::abs(p.value - limit));
  }

  LatticeModel dirty;
  dirty.disorder_strength = 5.0;
  dirty.seed = 1;
  const auto mid = scaling_study(dirty, {64, 128, 256, 512}, 32, Band::Mid);
  const auto& pts = find_curve(mid, "f_star").points;
  bool decreasing = true;
  std::string values;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0 && !(pts[k].value < pts[k - 1].value)) decreasing = false;
    values += fmt("%s%.4g", k ? "," : "", pts[k].value);
  }
  const double dt = seconds_since(t0);
  return {worst <= 0.02 && decreasing && dt < 120.0,
          fmt("clean |F*-(1-1/pi)| <= %.3g; disordered F* = %s; %.1f s", worst, values.c_str(), dt)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "effnum_acceptance";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "w.csv") << "0.2,1.8,1\n3,0,0,1\n1.5,0.75,0.75\n";
  std::ofstream(dir / "s.csv") << "0.5,0.5j,-0.5,0.5\n0.6,0.8j\n";
  const std::string w = (dir / "w.csv").string();
  const std::string s = (dir / "s.csv").string();

  const std::vector<std::vector<std::string>> commands = {
      {"eval", w, "--alpha", "0.3"},
      {"verify", "exp_shannon", "--seed", "5", "--trials", "500"},
      {"verify", "alpha:0.5", "--seed", "5", "--trials", "500", "--format", "json"},
      {"count", s, "--renormalize"},
      {"localize", "--disorder", "5", "--seed", "9", "--sizes", "32,64", "--ensemble", "4"},
      {"localize", "--disorder", "2", "--seed", "9", "--sizes", "16,32", "--format", "json"},
      {"sweep", w},
  };
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  std::size_t differing = 0;
  std::string errors;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("run" + std::to_string(c) + "_" + std::to_string(rep));
      auto args = commands[c];
      args.insert(args.end(), {"--out", out.string()});
      std::ostringstream o, e;
      const int code = cli::run(args, o, e);
      if (code != cli::kExitOk && code != cli::kExitVerifyFailed) errors += " " + commands[c][0];
      const std::string body = slurp(out);
      if (rep == 0) {
        first = body;
      } else if (body.empty() || body != first) {
        ++differing;
      }
    }
  }
  unsetenv("SOURCE_DATE_EPOCH");
  return {differing == 0 && errors.empty(),
          fmt("%zu of %zu seeded commands differ between runs%s", differing, commands.size(),
              errors.empty() ? "" : ("; errors from" + errors).c_str())};
}

}  // namespace

int main() {
  report("axiom suite", axiom_suite);
  report("counterexample suite", counterexamples);
  report("sandwich and range", sandwich_and_range);
  report("separability reconstruction", separability);
  report("duality and gauge", duality_and_gauge);
  report("quantum counting", quantum_counting);
  report("localization lab", localization);
  report("determinism", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
