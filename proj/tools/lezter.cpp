// Command line front end: lzc, ter, simulate, suggest, sweep.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lezter/csv.hpp"
#include "lezter/dynsys.hpp"
#include "lezter/lz.hpp"
#include "lezter/preprocess.hpp"
#include "lezter/runner.hpp"
#include "lezter/ter.hpp"

namespace {

using lezter::csv::format_real;

std::vector<double> load_column(const std::string& path, std::size_t column) {
  return lezter::csv::column_as_reals(lezter::csv::read_file(path), column);
}

void warn_if_degenerate(const lezter::Quantized& q, const std::string& what) {
  if (q.degenerate) std::cerr << "warning: " << what << " quantizes to fewer distinct symbols than the alphabet\n";
}

struct LzcArgs {
  std::string input;
  std::size_t column = 0;
  std::size_t alphabet = 2;
};

int run_lzc(const LzcArgs& a) {
  const auto values = load_column(a.input, a.column);
  const auto q = a.alphabet == 2 ? lezter::binarize_median(values) : lezter::quantize_quantiles(values, a.alphabet);
  warn_if_degenerate(q, a.input);
  const std::size_t c = lezter::lz76_word_count(q.symbols);
  std::cout << "T=" << q.symbols.size() << "\nC=" << c << "\nh=" << format_real(lezter::entropy_rate_lz(q.symbols))
            << '\n';
  return 0;
}

struct TerArgs {
  std::string target;
  std::string source;
  std::size_t column = 0;
  std::size_t m = 1;
  std::size_t tau = 1;
  std::size_t surrogates = 30;
  std::uint64_t seed = 0;
  std::string surrogate = "bootstrap";
};

int run_ter(const TerArgs& a) {
  const auto qx = lezter::binarize_median(load_column(a.target, a.column));
  const auto qy = lezter::binarize_median(load_column(a.source, a.column));
  warn_if_degenerate(qx, a.target);
  warn_if_degenerate(qy, a.source);
  const lezter::TerOptions opts{a.m, a.tau, a.surrogates, a.seed, lezter::parse_surrogate_method(a.surrogate)};
  const auto est = lezter::global_ter(qx.symbols, qy.symbols, opts);
  std::cout << "t_yx=" << format_real(est.t_yx) << "\nt_xy=" << format_real(est.t_xy)
            << "\nt_yx_surr=" << format_real(est.t_yx_surr) << "\nt_xy_surr=" << format_real(est.t_xy_surr)
            << "\nt_global=" << format_real(est.t_global) << '\n';
  return 0;
}

struct SimulateArgs {
  std::string system;
  double epsilon = 0.0;
  std::size_t length = 0;
  std::optional<std::size_t> discard;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  lezter::SystemSpec spec;
  spec.kind = lezter::parse_system_kind(a.system);
  spec.epsilon = a.epsilon;
  spec.length = a.length;
  spec.discard = a.discard;
  spec.seed = a.seed;
  const auto traj = lezter::simulate(spec);

  std::ofstream file;
  if (a.out != "-") {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot open " + a.out + " for writing");
  }
  std::ostream& out = a.out == "-" ? std::cout : file;
  out << "index,source,target\n";
  for (std::size_t i = 0; i < traj.source.size(); ++i) {
    out << i << ',' << format_real(traj.source[i]) << ',' << format_real(traj.target[i]) << '\n';
  }
  if (!out) throw std::runtime_error("I/O failure while writing " + a.out);
  return 0;
}

struct SuggestArgs {
  std::string input;
  std::size_t column = 0;
  std::size_t max_lag = 0;
  std::size_t bins = 16;
};

int run_suggest(const SuggestArgs& a) {
  const auto curve = lezter::auto_mutual_information(load_column(a.input, a.column), a.max_lag, a.bins);
  std::cout << "lag,mi\n";
  for (std::size_t tau = 0; tau < curve.mi.size(); ++tau) std::cout << tau << ',' << format_real(curve.mi[tau]) << '\n';
  const auto s = lezter::suggest_lag(curve);
  std::cout << "tau=" << s.lag << '\n';
  if (s.no_local_minimum) std::cerr << "warning: no local minimum up to max-lag; using the global minimum\n";
  return 0;
}

int run_sweep_command(const std::string& config_path) {
  const auto cfg = lezter::load_sweep_config(config_path);
  if (cfg.output_path.empty()) throw std::invalid_argument("config: output_path is required for the sweep command");
  const auto records = lezter::run_sweep(cfg);
  std::size_t failed = 0;
  for (const auto& r : records) failed += !r.ok();
  std::cout << "records=" << records.size() << "\nfailed=" << failed << "\noutput=" << cfg.output_path
            << "\nsummary=" << cfg.resolved_summary_path() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LZ76 transfer entropy rate estimation"};
  app.require_subcommand(1);

  LzcArgs lzc;
  auto* lzc_cmd = app.add_subcommand("lzc", "LZ76 word count and entropy rate of one column");
  lzc_cmd->add_option("--input", lzc.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  lzc_cmd->add_option("--column", lzc.column, "zero-based column index")->required();
  lzc_cmd->add_option("--alphabet", lzc.alphabet, "2 for median binarization, more for quantile bins")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  TerArgs ter;
  auto* ter_cmd = app.add_subcommand("ter", "global transfer entropy rate between two series");
  ter_cmd->add_option("--target", ter.target, "CSV holding the driven series x")->required()->check(CLI::ExistingFile);
  ter_cmd->add_option("--source", ter.source, "CSV holding the driving series y")->required()->check(CLI::ExistingFile);
  ter_cmd->add_option("--column", ter.column, "zero-based column index in both files")->required();
  ter_cmd->add_option("-m", ter.m, "embedding dimension")->required()->check(CLI::PositiveNumber);
  ter_cmd->add_option("--tau", ter.tau, "embedding delay")->required()->check(CLI::PositiveNumber);
  ter_cmd->add_option("-K", ter.surrogates, "surrogate count")->capture_default_str()->check(CLI::PositiveNumber);
  ter_cmd->add_option("--seed", ter.seed, "surrogate seed")->required();
  ter_cmd->add_option("--surrogate", ter.surrogate, "bootstrap or shuffle")
      ->capture_default_str()
      ->check(CLI::IsMember({"bootstrap", "shuffle"}));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "write a coupled-system trajectory as CSV");
  sim_cmd->add_option("--system", sim.system)
      ->required()
      ->check(CLI::IsMember({"henon-henon", "lorenz-lorenz", "rossler-lorenz"}));
  sim_cmd->add_option("--epsilon", sim.epsilon, "coupling strength")->required();
  sim_cmd->add_option("--length", sim.length, "samples to keep")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--discard", sim.discard, "transient samples dropped (system default if omitted)");
  sim_cmd->add_option("--seed", sim.seed, "initial condition seed")->required();
  sim_cmd->add_option("--out", sim.out, "output CSV, '-' for stdout")->required();

  SuggestArgs sug;
  auto* sug_cmd = app.add_subcommand("suggest", "auto mutual information curve and suggested delay");
  sug_cmd->add_option("--input", sug.input)->required()->check(CLI::ExistingFile);
  sug_cmd->add_option("--column", sug.column, "zero-based column index")->required();
  sug_cmd->add_option("--max-lag", sug.max_lag)->required()->check(CLI::PositiveNumber);
  sug_cmd->add_option("--bins", sug.bins)->capture_default_str()->check(CLI::PositiveNumber);

  std::string config_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  sweep_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lzc_cmd) return run_lzc(lzc);
    if (*ter_cmd) return run_ter(ter);
    if (*sim_cmd) return run_simulate(sim);
    if (*sug_cmd) return run_suggest(sug);
    if (*sweep_cmd) return run_sweep_command(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
