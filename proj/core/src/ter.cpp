#include "lezter/ter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lezter/random.hpp"

namespace lezter {

SurrogateMethod parse_surrogate_method(std::string_view name) {
  if (name == "bootstrap") return SurrogateMethod::Bootstrap;
  if (name == "shuffle") return SurrogateMethod::Shuffle;
  throw std::invalid_argument("unknown surrogate method: " + std::string(name));
}

std::string_view to_string(SurrogateMethod method) {
  return method == SurrogateMethod::Bootstrap ? "bootstrap" : "shuffle";
}

double joint_entropy_rate(const EmbeddingMatrix& matrix) {
  if (matrix.rows() < 2) throw std::invalid_argument("sequence too short");
  const SymbolSequence z = encode_extended_alphabet(matrix);
  const double log_alphabet = static_cast<double>(matrix.cols()) * std::log(static_cast<double>(matrix.alphabet_size()));
  return entropy_rate_from_count(lz76_word_count(z), z.size(), log_alphabet);
}

double ter_directed(const EmbeddingMatrix& joint) {
  return joint_entropy_rate(target_submatrix(joint)) - joint_entropy_rate(joint);
}

double ter_directed(const SymbolSequence& target, const SymbolSequence& source, std::size_t m, std::size_t tau) {
  return ter_directed(build_joint_matrix(target, source, m, tau));
}

double surrogate_ter_from_rows(const EmbeddingMatrix& joint, std::span<const std::vector<std::size_t>> streams) {
  if (streams.empty()) throw std::invalid_argument("surrogate count must be positive");
  double sum = 0.0;
  for (const auto& rows : streams) sum += joint_entropy_rate(joint.with_source_rows(rows));
  return -sum / static_cast<double>(streams.size());
}

std::vector<std::vector<std::size_t>> surrogate_streams(std::size_t rows, std::size_t surrogates, std::uint64_t seed,
                                                        SurrogateMethod method) {
  std::vector<std::vector<std::size_t>> streams;
  streams.reserve(surrogates);
  for (std::size_t k = 0; k < surrogates; ++k) {
    // Tag 2 keeps these streams apart from the map initial conditions (0, 1)
    // drawn from the same realization seed.
    Rng rng(derive_seed(seed, {2, k}));
    streams.push_back(draw_surrogate_rows(rows, method, rng));
  }
  return streams;
}

TerEstimate global_ter(const SymbolSequence& x, const SymbolSequence& y, const TerOptions& options) {
  if (options.surrogates == 0) throw std::invalid_argument("surrogate count must be positive");
  const EmbeddingMatrix v_yx = build_joint_matrix(x, y, options.m, options.tau);
  const EmbeddingMatrix v_xy = build_joint_matrix(y, x, options.m, options.tau);
  const auto streams = surrogate_streams(v_yx.rows(), options.surrogates, options.seed, options.method);

  TerEstimate est;
  est.t_yx = ter_directed(v_yx);
  est.t_xy = ter_directed(v_xy);
  est.t_yx_surr = surrogate_ter_from_rows(v_yx, streams);
  est.t_xy_surr = surrogate_ter_from_rows(v_xy, streams);
  est.t_global = combine_global(est.t_yx, est.t_xy, est.t_yx_surr, est.t_xy_surr);
  est.surrogates = options.surrogates;
  est.m = options.m;
  est.tau = options.tau;
  est.seed = options.seed;
  return est;
}

}  // namespace lezter
