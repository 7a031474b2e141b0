#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lezter/lz.hpp"

namespace lezter {

enum class EmbeddingLayout {
  /// [source past (m) | target past (m) | target present], d = 2m + 1.
  Joint,
  /// [target past (m) | target present], d = m + 1.
  TargetOnly,
};

enum class ColumnRole { SourcePast, TargetPast, TargetPresent };

/// Row-major matrix of delay-embedding tuples. Past blocks run oldest to newest.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix(std::vector<Symbol> data, std::size_t rows, Symbol alphabet_size, std::size_t history,
                  EmbeddingLayout layout);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] Symbol alphabet_size() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t history() const noexcept { return history_; }
  [[nodiscard]] EmbeddingLayout layout() const noexcept { return layout_; }
  [[nodiscard]] ColumnRole role(std::size_t col) const;

  [[nodiscard]] Symbol operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * cols_ + col];
  }
  [[nodiscard]] std::span<const Symbol> row(std::size_t r) const noexcept {
    return std::span(data_).subspan(r * cols_, cols_);
  }
  [[nodiscard]] std::span<const Symbol> data() const noexcept { return data_; }

  /// Copy whose source-past block in row n is taken from row source_rows[n].
  /// Target columns are left untouched. Joint layout only.
  [[nodiscard]] EmbeddingMatrix with_source_rows(std::span<const std::size_t> source_rows) const;

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::vector<Symbol> data_;
  std::size_t rows_;
  std::size_t cols_;
  Symbol alphabet_;
  std::size_t history_;
  EmbeddingLayout layout_;
};

/// Rows (y_{t-m*tau}, ..., y_{t-tau}, x_{t-m*tau}, ..., x_{t-tau}, x_t) for
/// t = m*tau + n, giving T - m*tau rows. `target` is x, `source` is y.
EmbeddingMatrix build_joint_matrix(const SymbolSequence& target, const SymbolSequence& source, std::size_t m,
                                   std::size_t tau);

/// The last m + 1 columns of a joint matrix.
EmbeddingMatrix target_submatrix(const EmbeddingMatrix& joint);

/// z_n = sum_i alpha^(i-1) * V[n, i] over an alphabet of size alpha^d.
/// Throws if alpha^d exceeds 2^63.
SymbolSequence encode_extended_alphabet(const EmbeddingMatrix& matrix);

/// Inverse of the row encoding: base-alpha digits of z, least significant first.
std::vector<Symbol> decode_extended_symbol(Symbol z, Symbol alphabet_size, std::size_t cols);

/// alpha^d, or throws "alphabet overflow" when it exceeds 2^63.
Symbol extended_alphabet_size(Symbol alphabet_size, std::size_t cols);

}  // namespace lezter
