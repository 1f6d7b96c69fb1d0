#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "effnum/axiom_verifier.hpp"
#include "effnum/cli.hpp"
#include "effnum/errors.hpp"
#include "effnum/localization.hpp"
#include "effnum/measures.hpp"

namespace effnum::cli {
namespace {

using ojson = nlohmann::ordered_json;

// Raised by command bodies to pick an exit code.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct Options {
  std::string input_path;
  std::string input_kind = "weights";
  std::vector<std::string> measures;
  std::vector<double> alphas;
  bool renormalize = false;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  std::size_t max_dim = 64;
  double delta = 1e-6;
  double bound = 0.1;
  std::vector<std::size_t> sizes;
  std::size_t ensemble = 1;
  std::string band = "ground";
  std::string out_path;
  std::string format = "csv";
  std::string mode = "basis";
  std::string structure_path;
  std::string partition;
  std::size_t total_blocks = 0;
  bool partial = false;
  double disorder = 0.0;
  double hopping = -1.0;
  std::string boundary = "open";
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("EFFNUM_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kExitParseError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  return Format::Table;
}

ojson num(double x) { return round_to_output(x); }

Renormalize renorm(const Options& o) { return o.renormalize ? Renormalize::Yes : Renormalize::No; }

// Writes to --out (with a manifest sidecar for CSV and table output) or to `out`.
void emit(const Options& o, const Table& table, const RunManifest& manifest, std::ostream& out) {
  const Format f = parse_format(o.format);
  if (o.out_path.empty()) {
    write_table(out, table, f, manifest);
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw CommandError(kExitParseError, "cannot write '" + o.out_path + "'");
  write_table(file, table, f, manifest);
  if (f != Format::Json) {
    std::ofstream side(o.out_path + ".manifest.json", std::ios::binary);
    side << manifest.to_json().dump(2) << '\n';
  }
}

// ---- eval ----------------------------------------------------------------

double evaluate(const std::string& id, const CountingVector& w) {
  const double n = static_cast<double>(w.size());
  if (id.rfind("f_", 0) == 0) {
    const std::string rest = id.substr(2);
    if (rest == "star") return effective_number_min(w) / n;
    if (rest == "plus") return support_count(w) / n;
    if (rest.rfind("alpha:", 0) == 0) return evaluate(rest, w) / n;
  }
  if (id == "participation_fraction") return participation_number(w) / n;
  if (id == "exp_shannon_fraction") return exp_shannon(w) / n;
  if (id.rfind("co_", 0) == 0) {
    const auto f = counting_function_by_name(id.substr(3));
    if (!f.is_enf()) throw std::invalid_argument("co-number needs an ENF, got '" + id + "'");
    return co_enf_value(f, w);
  }
  return measure_by_name(id)(w);
}

std::vector<std::string> measure_list(const Options& o, std::vector<std::string> fallback) {
  std::vector<std::string> ids = o.measures.empty() ? std::move(fallback) : o.measures;
  for (double a : o.alphas) ids.push_back("alpha:" + format_param(a));
  return ids;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto ids = measure_list(o, {"n_star", "n_plus", "participation", "exp_shannon"});
  // Reject unknown measure names before reading any data.
  for (const auto& id : ids) {
    try {
      evaluate(id, CountingVector({1.0}));
    } catch (const std::exception& e) {
      throw CommandError(kExitParseError, e.what());
    }
  }
  if (o.input_kind != "weights" && o.input_kind != "prob") {
    throw CommandError(kExitParseError, "eval: --input must be weights or prob");
  }
  const std::string text = read_input(o.input_path);

  Table table;
  table.header = {"row", "N"};
  table.header.insert(table.header.end(), ids.begin(), ids.end());

  // Row numbers below are data rows; ParseError carries the file line.
  const auto rows = parse_real_rows(text);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::optional<CountingVector> w;
    try {
      if (o.input_kind == "prob") {
        w = CountingVector::from_probabilities(ProbabilityVector(rows[r], renorm(o)));
      } else {
        w.emplace(rows[r], renorm(o));
      }
    } catch (const ConstraintError& e) {
      throw CommandError(kExitConstraint, "row " + std::to_string(r + 1) + ": " + e.what());
    }
    std::vector<ojson> cells = {r + 1, w->size()};
    for (const auto& id : ids) cells.push_back(num(evaluate(id, *w)));
    table.rows.push_back(std::move(cells));
  }

  RunManifest manifest{"eval"};
  manifest.config = {{"input", o.input_path},
                     {"input_kind", o.input_kind},
                     {"measures", ids},
                     {"renormalize", o.renormalize}};
  emit(o, table, manifest, out);
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

std::string describe_inputs(const Witness& w) {
  std::string s;
  for (std::size_t k = 0; k < w.inputs.size(); ++k) {
    if (k) s += "+";
    s += "(";
    for (std::size_t i = 0; i < w.inputs[k].size(); ++i) {
      if (i) s += ",";
      s += format_number(w.inputs[k][i]);
    }
    s += ")";
  }
  return s;
}

std::string describe_values(const Witness& w) {
  std::string s;
  for (std::size_t k = 0; k < w.observed.size(); ++k) {
    if (k) s += ";";
    s += format_number(w.observed[k]);
  }
  return s;
}

int cmd_verify(const Options& o, std::ostream& out, const std::string& target) {
  Measure measure;
  std::string label = target;
  try {
    measure = measure_by_name(target);
  } catch (const ConstraintError& e) {
    throw CommandError(kExitParseError, e.what());
  } catch (const std::invalid_argument&) {
    std::ifstream probe(target);
    if (!probe) throw CommandError(kExitParseError, "unknown measure or file '" + target + "'");
    try {
      measure = separable_measure(CountingFunction::tabulated(parse_knots(read_input(target))));
    } catch (const ConstraintError& e) {
      throw CommandError(kExitConstraint, std::string("tabulated function: ") + e.what());
    }
    label = "tabulated:" + target;
  }

  TrialConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.max_dim = o.max_dim;
  cfg.continuity_delta = o.delta;
  cfg.continuity_bound = o.bound;
  if (!o.alphas.empty()) cfg.alpha_grid = o.alphas;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitParseError, e.what());
  }

  const auto verdicts = verify_all(measure, cfg);
  Table table;
  table.header = {"axiom",   "status",  "trials",   "threshold", "violation",
                  "witness", "values",  "canonical", "canonical_values", "note"};
  bool all_pass = true;
  for (const auto& v : verdicts) {
    all_pass = all_pass && v.passed();
    std::vector<ojson> cells = {std::string(axiom_name(v.axiom)), std::string(status_name(v.status)),
                                v.trials, num(v.threshold)};
    if (v.witness && !v.passed()) {
      cells.push_back(num(v.witness->violation));
      cells.push_back(describe_inputs(*v.witness));
      cells.push_back(describe_values(*v.witness));
    } else if (v.witness) {
      cells.push_back(num(v.witness->violation));
      cells.insert(cells.end(), {"", ""});
    } else {
      cells.insert(cells.end(), {"", "", ""});
    }
    if (v.canonical) {
      cells.push_back(describe_inputs(*v.canonical));
      cells.push_back(describe_values(*v.canonical));
    } else {
      cells.insert(cells.end(), {"", ""});
    }
    cells.push_back(v.note);
    table.rows.push_back(std::move(cells));
  }

  RunManifest manifest{"verify"};
  manifest.config = {{"target", label},        {"seed", cfg.seed},
                     {"trials", cfg.trials},   {"max_dim", cfg.max_dim},
                     {"tolerance", cfg.tolerance}, {"continuity_delta", cfg.continuity_delta},
                     {"continuity_bound", cfg.continuity_bound}};
  emit(o, table, manifest, out);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

// ---- count ---------------------------------------------------------------

int cmd_count(const Options& o, std::ostream& out) {
  std::vector<CountingFunction> fs;
  const auto ids = measure_list(o, {"n_star"});
  for (const auto& id : ids) {
    try {
      fs.push_back(counting_function_by_name(id));
    } catch (const std::exception& e) {
      throw CommandError(kExitParseError, e.what());
    }
  }

  const auto states = parse_complex_rows(read_input(o.input_path));
  std::optional<OrthonormalSet> subset;
  if (o.mode == "subset") {
    if (o.structure_path.empty()) throw CommandError(kExitParseError, "subset mode needs --structure");
    auto vectors = parse_complex_rows(read_input(o.structure_path));
    const std::size_t dim = states.empty() ? 0 : states.front().size();
    try {
      subset.emplace(std::move(vectors), dim);
    } catch (const ConstraintError& e) {
      throw CommandError(kExitConstraint, e.what());
    }
  } else if (o.mode == "partition") {
    if (o.partition.empty()) throw CommandError(kExitParseError, "partition mode needs --partition");
  } else if (o.mode != "basis") {
    throw CommandError(kExitParseError, "--mode must be basis, subset or partition");
  }

  Table table;
  table.header = {"row", "N"};
  table.header.insert(table.header.end(), ids.begin(), ids.end());
  for (std::size_t r = 0; r < states.size(); ++r) {
    try {
      const QuantumState psi(states[r], renorm(o));
      std::vector<ojson> cells = {r + 1, psi.dimension()};
      if (o.mode == "basis") {
        for (const auto& f : fs) cells.push_back(num(count_identities(psi, f)));
      } else if (o.mode == "subset") {
        for (const auto& f : fs) cells.push_back(num(count_subset(psi, *subset, f)));
      } else {
        const auto part = SubspacePartition::parse(o.partition, psi.dimension());
        if (!part.is_full() && !o.partial) {
          throw ConstraintError(
              "partition does not cover the space; pass --partial to count a partial family");
        }
        for (const auto& f : fs) {
          double v;
          if (part.is_full()) {
            v = count_subspaces(psi, part, f);
          } else if (o.total_blocks > 0) {
            v = count_subspace_subset(psi, part, o.total_blocks, f);
          } else {
            v = count_subspace_subset(psi, part, f);
          }
          cells.push_back(num(v));
        }
      }
      table.rows.push_back(std::move(cells));
    } catch (const ConstraintError& e) {
      throw CommandError(kExitConstraint, "row " + std::to_string(r + 1) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw CommandError(kExitConstraint, "row " + std::to_string(r + 1) + ": " + e.what());
    }
  }

  RunManifest manifest{"count"};
  manifest.config = {{"input", o.input_path}, {"mode", o.mode},        {"measures", ids},
                     {"structure", o.structure_path}, {"partition", o.partition},
                     {"renormalize", o.renormalize}};
  emit(o, table, manifest, out);
  return kExitOk;
}

// ---- localize ------------------------------------------------------------

int cmd_localize(const Options& o, std::ostream& out) {
  if (o.sizes.empty()) throw CommandError(kExitParseError, "localize needs --sizes");
  for (std::size_t k = 1; k < o.sizes.size(); ++k) {
    if (o.sizes[k] <= o.sizes[k - 1]) {
      throw CommandError(kExitParseError, "--sizes must be strictly increasing");
    }
  }
  if (o.sizes.front() < 2) throw CommandError(kExitParseError, "--sizes must be >= 2");
  if (o.ensemble < 1) throw CommandError(kExitParseError, "--ensemble must be >= 1");
  if (o.band != "ground" && o.band != "mid") {
    throw CommandError(kExitParseError, "--band must be ground or mid");
  }
  if (o.boundary != "open" && o.boundary != "periodic") {
    throw CommandError(kExitParseError, "--boundary must be open or periodic");
  }
  if (!(o.disorder >= 0.0)) throw CommandError(kExitParseError, "--disorder must be >= 0");

  LatticeModel base;
  base.hopping = o.hopping;
  base.disorder_strength = o.disorder;
  base.seed = o.seed;
  base.boundary = o.boundary == "open" ? Boundary::Open : Boundary::Periodic;
  const Band band = o.band == "ground" ? Band::Ground : Band::Mid;
  const auto curves = scaling_study(base, o.sizes, o.ensemble, band);

  std::vector<std::string> wanted = o.measures;
  if (wanted.empty()) {
    for (const auto& c : curves) wanted.push_back(c.measure);
  }
  Table table;
  table.header = {"measure", "n_sites", "value", "std_error", "ensemble", "disorder"};
  for (const auto& id : wanted) {
    const ScalingCurve* curve = nullptr;
    try {
      curve = &find_curve(curves, id);
    } catch (const std::out_of_range& e) {
      throw CommandError(kExitParseError, e.what());
    }
    for (const auto& p : curve->points) {
      table.rows.push_back({id, p.n_sites, num(p.value), num(p.std_error), curve->ensemble,
                            num(curve->disorder_strength)});
    }
  }

  RunManifest manifest{"localize"};
  manifest.config = {{"sizes", o.sizes},         {"ensemble", o.ensemble}, {"band", o.band},
                     {"disorder", o.disorder},   {"hopping", o.hopping},   {"boundary", o.boundary},
                     {"seed", o.seed},           {"measures", wanted}};
  emit(o, table, manifest, out);
  return kExitOk;
}

// ---- sweep ---------------------------------------------------------------

int cmd_sweep(const Options& o, std::ostream& out) {
  TrialConfig cfg;
  if (!o.alphas.empty()) cfg.alpha_grid = o.alphas;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitParseError, e.what());
  }
  const auto rows = parse_real_rows(read_input(o.input_path));
  Table table;
  table.header = {"row", "alpha", "value", "n_star", "n_plus", "monotone"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::optional<CountingVector> w;
    try {
      w.emplace(rows[r], renorm(o));
    } catch (const ConstraintError& e) {
      throw CommandError(kExitConstraint, "row " + std::to_string(r + 1) + ": " + e.what());
    }
    const auto s = check_range_interval(*w, cfg);
    for (const auto& [a, v] : s.sweep) {
      table.rows.push_back({r + 1, num(a), num(v), num(s.n_star), num(s.n_plus), s.monotone});
    }
  }
  RunManifest manifest{"sweep"};
  manifest.config = {{"input", o.input_path}, {"alphas", cfg.alpha_grid}};
  emit(o, table, manifest, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective number functions: evaluation, axiom checks, quantum counting and "
               "localization studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options o;
  o.seed = default_seed();
  std::string target;

  auto add_output = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write output to this file");
    sub->add_option("--format", o.format, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
  };
  auto add_measures = [&o](CLI::App* sub) {
    sub->add_option("--measure", o.measures, "Comma-separated measure ids")->delimiter(',');
    sub->add_option("--alpha", o.alphas, "Comma-separated alpha values")->delimiter(',');
  };

  auto* eval = app.add_subcommand("eval", "Evaluate measures on weight or probability vectors");
  eval->add_option("file", o.input_path, "Input file ('-' for stdin)")->required();
  eval->add_option("--input", o.input_kind, "weights or prob");
  eval->add_flag("--renormalize", o.renormalize, "Rescale rows to satisfy the sum constraint");
  add_measures(eval);
  add_output(eval);

  auto* verify = app.add_subcommand("verify", "Run the axiom checks against a measure");
  verify->add_option("target", target, "Measure name or tabulated knot file")->required();
  verify->add_option("--seed", o.seed, "Random seed (default $EFFNUM_SEED or 0)");
  verify->add_option("--trials", o.trials, "Random trials per axiom");
  verify->add_option("--max-dim", o.max_dim, "Largest random dimension");
  verify->add_option("--delta", o.delta, "Continuity probe transfer size");
  verify->add_option("--bound", o.bound, "Continuity probe response bound");
  verify->add_option("--alpha", o.alphas, "Alpha grid")->delimiter(',');
  add_output(verify);

  auto* count = app.add_subcommand("count", "Count effective identities of quantum states");
  count->add_option("file", o.input_path, "State file ('-' for stdin)")->required();
  count->add_option("--input", o.input_kind, "state");
  count->add_option("--mode", o.mode, "basis, subset or partition");
  count->add_option("--structure", o.structure_path, "Orthonormal subset file (subset mode)");
  count->add_option("--partition", o.partition, "Blocks such as \"1,2|3,4\" (partition mode)");
  count->add_flag("--partial", o.partial, "Allow partitions that do not cover the space");
  count->add_option("--total-blocks", o.total_blocks, "Block count of the full decomposition");
  count->add_flag("--renormalize", o.renormalize, "Normalize input states");
  add_measures(count);
  add_output(count);

  auto* localize = app.add_subcommand("localize", "Finite-size study of 1D Anderson eigenstates");
  localize->add_option("--sizes", o.sizes, "Comma-separated chain lengths")
      ->delimiter(',')
      ->required();
  localize->add_option("--ensemble", o.ensemble, "Disorder realizations per size");
  localize->add_option("--band", o.band, "ground or mid");
  localize->add_option("--disorder", o.disorder, "Half-width of the on-site disorder");
  localize->add_option("--hopping", o.hopping, "Nearest-neighbour hopping");
  localize->add_option("--boundary", o.boundary, "open or periodic");
  localize->add_option("--seed", o.seed, "Base seed (default $EFFNUM_SEED or 0)");
  localize->add_option("--measure", o.measures, "Measures to report")->delimiter(',');
  add_output(localize);

  auto* sweep = app.add_subcommand("sweep", "Sweep the alpha family over its attainable range");
  sweep->add_option("file", o.input_path, "Input file ('-' for stdin)")->required();
  sweep->add_option("--alpha", o.alphas, "Alpha grid")->delimiter(',');
  sweep->add_flag("--renormalize", o.renormalize, "Rescale rows to sum N");
  add_output(sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*verify) return cmd_verify(o, out, target);
    if (*count) return cmd_count(o, out);
    if (*localize) return cmd_localize(o, out);
    if (*sweep) return cmd_sweep(o, out);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const ConstraintError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }
  return kExitParseError;
}

}  // namespace effnum::cli
