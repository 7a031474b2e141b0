#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <string_view>
#include <vector>

#include "lezter/embedding.hpp"
#include "lezter/lz.hpp"

namespace lezter {

/// How surrogate source pasts are formed.
enum class SurrogateMethod {
  /// Redraw row indices uniformly with replacement.
  Bootstrap,
  /// Random permutation of the row indices.
  Shuffle,
};

SurrogateMethod parse_surrogate_method(std::string_view name);
std::string_view to_string(SurrogateMethod method);

/// Anything that returns a uniform index in [0, n) when called with n.
template <class D>
concept IndexDrawer = requires(D& d, std::size_t n) {
  { d(n) } -> std::convertible_to<std::size_t>;
};

struct TerOptions {
  std::size_t m = 1;
  std::size_t tau = 1;
  std::size_t surrogates = 30;
  std::uint64_t seed = 0;
  SurrogateMethod method = SurrogateMethod::Bootstrap;
};

/// One LZ-based transfer entropy rate estimate between a target x and a
/// source y. All rates in nats per symbol.
struct TerEstimate {
  double t_yx = 0.0;
  double t_xy = 0.0;
  double t_yx_surr = 0.0;
  double t_xy_surr = 0.0;
  double t_global = 0.0;
  std::size_t surrogates = 0;
  std::size_t m = 0;
  std::size_t tau = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const TerEstimate&, const TerEstimate&) = default;
};

/// t_yx - t_xy - (t_yx_surr - t_xy_surr). Positive means flow from y to x.
constexpr double combine_global(double t_yx, double t_xy, double t_yx_surr, double t_xy_surr) noexcept {
  return (t_yx - t_xy) - (t_yx_surr - t_xy_surr);
}

/// LZ entropy rate of the row sequence: C * (d ln(alpha) + ln C) / N.
double joint_entropy_rate(const EmbeddingMatrix& matrix);

/// h(target past, target present) - h(source past, target past, target present),
/// both from the same joint matrix.
double ter_directed(const EmbeddingMatrix& joint);
double ter_directed(const SymbolSequence& target, const SymbolSequence& source, std::size_t m, std::size_t tau);

/// One surrogate row-index stream of length n.
template <IndexDrawer D>
std::vector<std::size_t> draw_surrogate_rows(std::size_t n, SurrogateMethod method, D& draw) {
  std::vector<std::size_t> rows(n);
  if (method == SurrogateMethod::Bootstrap) {
    for (auto& r : rows) r = static_cast<std::size_t>(draw(n));
  } else {
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(draw(i));
      std::swap(rows[i - 1], rows[j]);
    }
  }
  return rows;
}

/// -mean_k h(V_k) where V_k takes its source-past rows from streams[k].
double surrogate_ter_from_rows(const EmbeddingMatrix& joint, std::span<const std::vector<std::size_t>> streams);

/// -mean over K surrogate matrices of their joint entropy rate.
template <IndexDrawer D>
double surrogate_ter(const EmbeddingMatrix& joint, std::size_t surrogates, D& draw,
                     SurrogateMethod method = SurrogateMethod::Bootstrap) {
  if (surrogates == 0) throw std::invalid_argument("surrogate count must be positive");
  std::vector<std::vector<std::size_t>> streams;
  streams.reserve(surrogates);
  for (std::size_t k = 0; k < surrogates; ++k) streams.push_back(draw_surrogate_rows(joint.rows(), method, draw));
  return surrogate_ter_from_rows(joint, streams);
}

/// Surrogate index streams for a seed. Stream k depends only on (seed, k),
/// and the same streams serve both directions of global_ter.
std::vector<std::vector<std::size_t>> surrogate_streams(std::size_t rows, std::size_t surrogates, std::uint64_t seed,
                                                        SurrogateMethod method);

/// Full estimate: both directed rates, both surrogate levels, and the
/// antisymmetric global value. `x` is the target/driven series, `y` the
/// source/driver. Deterministic in (x, y, options).
TerEstimate global_ter(const SymbolSequence& x, const SymbolSequence& y, const TerOptions& options);

}  // namespace lezter
