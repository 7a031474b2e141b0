#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lezter/lz.hpp"

namespace lezter {

/// Raw real-valued observations prior to symbolization.
struct RealSeries {
  std::vector<double> values;
  std::optional<double> sample_period;
};

/// Symbolization result. `degenerate` flags inputs whose bins collapse,
/// e.g. a constant series or fewer distinct values than symbols.
struct Quantized {
  SymbolSequence symbols;
  bool degenerate = false;
};

/// Linear-interpolation quantile of already sorted data (R type 7).
double sorted_quantile(std::span<const double> sorted, double p);

double median(std::span<const double> values);

/// 1 where value >= median, else 0.
Quantized binarize_median(std::span<const double> values);

/// Symbol k for values in [q_k, q_{k+1}), thresholds at the k/alphabet
/// empirical quantiles. alphabet == 2 reproduces binarize_median.
Quantized quantize_quantiles(std::span<const double> values, std::size_t alphabet);

struct AmiCurve {
  /// mi[tau] for tau = 0..max_lag, in nats.
  std::vector<double> mi;

  [[nodiscard]] std::size_t max_lag() const noexcept { return mi.empty() ? 0 : mi.size() - 1; }
};

/// Plug-in mutual information between the series and its lagged copy on an
/// equal-count histogram with `bins` bins per axis.
AmiCurve auto_mutual_information(std::span<const double> values, std::size_t max_lag, std::size_t bins = 16);

struct LagSuggestion {
  std::size_t lag = 1;
  /// Set when the curve has no strict interior local minimum and the global
  /// minimum over lags >= 1 was used instead.
  bool no_local_minimum = false;
};

LagSuggestion suggest_lag(const AmiCurve& curve);

/// m = m_x + m_y + 1.
int suggest_embedding_dim(int m_x, int m_y);

}  // namespace lezter
