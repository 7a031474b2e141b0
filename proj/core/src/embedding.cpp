#include "lezter/embedding.hpp"

#include <stdexcept>
#include <utility>

namespace lezter {

namespace {

std::size_t width(std::size_t history, EmbeddingLayout layout) {
  return layout == EmbeddingLayout::Joint ? 2 * history + 1 : history + 1;
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::vector<Symbol> data, std::size_t rows, Symbol alphabet_size,
                                 std::size_t history, EmbeddingLayout layout)
    : data_(std::move(data)),
      rows_(rows),
      cols_(width(history, layout)),
      alphabet_(alphabet_size),
      history_(history),
      layout_(layout) {
  if (history_ < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("embedding data size mismatch");
  for (Symbol s : data_) {
    if (s >= alphabet_) throw std::invalid_argument("symbol out of alphabet");
  }
}

ColumnRole EmbeddingMatrix::role(std::size_t col) const {
  if (col >= cols_) throw std::out_of_range("column index out of range");
  if (col + 1 == cols_) return ColumnRole::TargetPresent;
  if (layout_ == EmbeddingLayout::Joint && col < history_) return ColumnRole::SourcePast;
  return ColumnRole::TargetPast;
}

EmbeddingMatrix EmbeddingMatrix::with_source_rows(std::span<const std::size_t> source_rows) const {
  if (layout_ != EmbeddingLayout::Joint) throw std::invalid_argument("source resampling needs a joint matrix");
  if (source_rows.size() != rows_) throw std::invalid_argument("one source row index per row required");
  std::vector<Symbol> out(data_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::size_t from = source_rows[r];
    if (from >= rows_) throw std::out_of_range("source row index out of range");
    for (std::size_t c = 0; c < history_; ++c) out[r * cols_ + c] = data_[from * cols_ + c];
  }
  return {std::move(out), rows_, alphabet_, history_, layout_};
}

EmbeddingMatrix build_joint_matrix(const SymbolSequence& target, const SymbolSequence& source, std::size_t m,
                                   std::size_t tau) {
  if (target.size() != source.size()) throw std::invalid_argument("target and source lengths differ");
  if (target.alphabet_size() != source.alphabet_size()) {
    throw std::invalid_argument("target and source alphabets differ");
  }
  if (m < 1 || tau < 1) throw std::invalid_argument("m and tau must be >= 1");
  const std::size_t length = target.size();
  const std::size_t span = m * tau;
  if (length <= span) throw std::invalid_argument("series too short for embedding");

  const std::size_t rows = length - span;
  const std::size_t cols = 2 * m + 1;
  std::vector<Symbol> data(rows * cols);
  for (std::size_t n = 0; n < rows; ++n) {
    const std::size_t t = span + n;
    Symbol* row = data.data() + n * cols;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t past = t - (m - i) * tau;
      row[i] = source[past];
      row[m + i] = target[past];
    }
    row[2 * m] = target[t];
  }
  return {std::move(data), rows, target.alphabet_size(), m, EmbeddingLayout::Joint};
}

EmbeddingMatrix target_submatrix(const EmbeddingMatrix& joint) {
  if (joint.layout() != EmbeddingLayout::Joint) throw std::invalid_argument("target_submatrix needs a joint matrix");
  const std::size_t m = joint.history();
  const std::size_t cols = m + 1;
  std::vector<Symbol> data;
  data.reserve(joint.rows() * cols);
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    const auto row = joint.row(r);
    data.insert(data.end(), row.begin() + static_cast<std::ptrdiff_t>(m), row.end());
  }
  return {std::move(data), joint.rows(), joint.alphabet_size(), m, EmbeddingLayout::TargetOnly};
}

Symbol extended_alphabet_size(Symbol alphabet_size, std::size_t cols) {
  constexpr Symbol kLimit = Symbol{1} << 63;
  Symbol size = 1;
  for (std::size_t i = 0; i < cols; ++i) {
    if (size > kLimit / alphabet_size) throw std::overflow_error("alphabet overflow");
    size *= alphabet_size;
  }
  return size;
}

SymbolSequence encode_extended_alphabet(const EmbeddingMatrix& matrix) {
  const Symbol alphabet = matrix.alphabet_size();
  const Symbol extended = extended_alphabet_size(alphabet, matrix.cols());
  std::vector<Symbol> z(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    Symbol value = 0;
    for (std::size_t i = row.size(); i-- > 0;) value = value * alphabet + row[i];
    z[r] = value;
  }
  return {std::move(z), extended};
}

std::vector<Symbol> decode_extended_symbol(Symbol z, Symbol alphabet_size, std::size_t cols) {
  std::vector<Symbol> row(cols);
  for (auto& digit : row) {
    digit = z % alphabet_size;
    z /= alphabet_size;
  }
  if (z != 0) throw std::invalid_argument("symbol exceeds extended alphabet");
  return row;
}

}  // namespace lezter
