#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lezter/dynsys.hpp"
#include "lezter/ter.hpp"

namespace lezter {

struct Binarization {
  enum class Kind { Median, Quantile };
  Kind kind = Kind::Median;
  /// Symbols per series; 2 for median binarization.
  std::size_t alphabet = 2;

  static Binarization parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
};

/// Parameter sweep. Lengths are series lengths; each estimate uses
/// length - m * tau embedding rows.
struct SweepConfig {
  SystemKind system = SystemKind::HenonHenon;
  std::vector<double> epsilon_values;
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> tau_values;
  std::size_t realizations = 1;
  std::size_t surrogates = 30;
  std::uint64_t master_seed = 0;
  Binarization binarization;
  std::optional<std::size_t> discard;
  std::string output_path;
  /// Defaults to output_path with "_summary" inserted before the extension.
  std::string summary_path;
  SurrogateMethod surrogate = SurrogateMethod::Bootstrap;
  std::size_t threads = 1;

  void validate() const;
  [[nodiscard]] std::string resolved_summary_path() const;
};

/// Reads the flat `key = value` format. Lists are comma-separated, `#`
/// starts a comment. Unknown keys are rejected.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRecord {
  std::string system;
  double epsilon = 0.0;
  std::size_t length = 0;
  std::size_t m = 0;
  std::size_t tau = 0;
  std::size_t realization = 0;
  std::uint64_t seed = 0;
  double t_yx = 0.0;
  double t_xy = 0.0;
  double t_yx_surr = 0.0;
  double t_xy_surr = 0.0;
  double t_global = 0.0;
  double elapsed_ms = 0.0;
  /// "ok" or "failed".
  std::string status = "ok";
  std::string message;

  [[nodiscard]] bool ok() const noexcept { return status == "ok"; }
  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Seed of one realization. The trajectory and the surrogate streams of
/// every (m, tau) estimate for that realization derive from it.
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t epsilon_index, std::size_t length_index,
                               std::size_t realization);

/// Runs every (epsilon, length, realization) work item and every (m, tau)
/// estimate within it. Records come back in canonical order (epsilon,
/// length, realization, m, tau) regardless of thread count. When
/// config.output_path is set, records are streamed to `<path>.partial` in the
/// same order and the file is renamed to `<path>` on success; the summary
/// CSV is written alongside.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

struct SummaryRow {
  double epsilon = 0.0;
  std::size_t length = 0;
  std::size_t m = 0;
  std::size_t tau = 0;
  std::size_t count = 0;
  std::size_t failed = 0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::size_t outliers = 0;
};

/// Boxplot statistics of t_global per (epsilon, length, m, tau): quartiles
/// by linear interpolation, whiskers at the most extreme values within
/// 1.5 IQR of the box. Failed records only contribute to `failed`.
std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records);

void write_records_header(std::ostream& out);
void write_record(std::ostream& out, const SweepRecord& record);
void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_records_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace lezter
