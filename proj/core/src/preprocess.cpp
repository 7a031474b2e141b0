#include "lezter/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lezter {

namespace {

void require_valid_series(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("series must have at least 2 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("series contains non-finite values");
  }
}

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

// Equal-count bin per sample. Tied values share the bin of their lowest rank.
std::vector<std::size_t> equal_count_bins(std::span<const double> values, std::size_t bins) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> bin(n);
  std::size_t rank_of_group = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == 0 || values[order[r]] != values[order[r - 1]]) rank_of_group = r;
    bin[order[r]] = rank_of_group * bins / n;
  }
  return bin;
}

double plugin_mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b,
                                 std::size_t bins) {
  const std::size_t n = a.size();
  std::vector<double> joint(bins * bins, 0.0), pa(bins, 0.0), pb(bins, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    joint[a[i] * bins + b[i]] += 1.0;
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
  }
  const auto total = static_cast<double>(n);
  double mi = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      const double c = joint[i * bins + j];
      if (c == 0.0) continue;
      mi += c / total * std::log(c * total / (pa[i] * pb[j]));
    }
  }
  return std::max(mi, 0.0);
}

}  // namespace

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) {
  const auto sorted = sorted_copy(values);
  return sorted_quantile(sorted, 0.5);
}

Quantized binarize_median(std::span<const double> values) {
  require_valid_series(values);
  const double med = median(values);
  std::vector<Symbol> out(values.size());
  bool all_same = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] >= med ? 1 : 0;
    all_same = all_same && values[i] == values[0];
  }
  return {SymbolSequence(std::move(out), 2), all_same};
}

Quantized quantize_quantiles(std::span<const double> values, std::size_t alphabet) {
  if (alphabet < 2) throw std::invalid_argument("alphabet must be at least 2");
  require_valid_series(values);
  if (values.size() < alphabet) throw std::invalid_argument("series shorter than alphabet");

  const auto sorted = sorted_copy(values);
  std::vector<double> thresholds(alphabet - 1);
  for (std::size_t k = 1; k < alphabet; ++k) {
    thresholds[k - 1] = sorted_quantile(sorted, static_cast<double>(k) / static_cast<double>(alphabet));
  }

  std::vector<double> uniq = sorted;
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  bool degenerate = uniq.size() < alphabet;
  for (std::size_t k = 1; k < thresholds.size(); ++k) {
    degenerate = degenerate || thresholds[k] == thresholds[k - 1];
  }

  std::vector<Symbol> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Number of thresholds <= value.
    out[i] = static_cast<Symbol>(std::upper_bound(thresholds.begin(), thresholds.end(), values[i]) -
                                 thresholds.begin());
  }
  return {SymbolSequence(std::move(out), alphabet), degenerate};
}

AmiCurve auto_mutual_information(std::span<const double> values, std::size_t max_lag, std::size_t bins) {
  require_valid_series(values);
  if (bins < 1) throw std::invalid_argument("bins must be positive");
  if (2 * max_lag >= values.size()) throw std::invalid_argument("max_lag must be below length/2");

  const auto bin = equal_count_bins(values, bins);
  AmiCurve curve;
  curve.mi.reserve(max_lag + 1);
  for (std::size_t tau = 0; tau <= max_lag; ++tau) {
    const std::size_t n = bin.size() - tau;
    curve.mi.push_back(plugin_mutual_information(std::span(bin).first(n), std::span(bin).subspan(tau, n), bins));
  }
  return curve;
}

LagSuggestion suggest_lag(const AmiCurve& curve) {
  const auto& mi = curve.mi;
  if (mi.size() < 3) throw std::invalid_argument("curve needs at least 3 lags");
  for (std::size_t tau = 1; tau + 1 < mi.size(); ++tau) {
    if (mi[tau - 1] > mi[tau] && mi[tau] < mi[tau + 1]) return {tau, false};
  }
  const auto it = std::min_element(mi.begin() + 1, mi.end());
  return {static_cast<std::size_t>(it - mi.begin()), true};
}

int suggest_embedding_dim(int m_x, int m_y) {
  if (m_x < 1 || m_y < 1) throw std::invalid_argument("embedding dimensions must be >= 1");
  return m_x + m_y + 1;
}

}  // namespace lezter
