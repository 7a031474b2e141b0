#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lezter {

using Symbol = std::uint64_t;

/// A finite sequence over the integer alphabet {0, ..., alphabet_size - 1}.
///
/// The constructor enforces the alphabet bound; an empty sequence is allowed
/// to exist but every parsing operation rejects it.
class SymbolSequence {
 public:
  SymbolSequence() = default;
  SymbolSequence(std::vector<Symbol> symbols, Symbol alphabet_size);

  [[nodiscard]] std::span<const Symbol> symbols() const noexcept { return symbols_; }
  [[nodiscard]] Symbol alphabet_size() const noexcept { return alphabet_size_; }
  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] bool empty() const noexcept { return symbols_.empty(); }
  [[nodiscard]] Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

  /// Parses a string of decimal digits ("0110...") over an alphabet of at most 10.
  static SymbolSequence from_digits(std::string_view digits, Symbol alphabet_size);

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  std::vector<Symbol> symbols_;
  Symbol alphabet_size_ = 2;
};

struct ParseResult {
  std::size_t word_count = 0;
  /// 1-based inclusive end index of every word; the last entry equals the length.
  std::vector<std::size_t> word_boundaries;
};

/// LZ76 production parsing with overlapping search.
///
/// A word starting at position p ends at the first n >= p such that
/// seq[p..n] does not occur in seq[1..n-1]. A fragment left unfinished at the
/// end of the input counts as one word.
ParseResult lz76_parse(const SymbolSequence& seq);

std::size_t lz76_word_count(const SymbolSequence& seq);

/// Plug-in entropy rate estimate C * (ln(alpha) + ln(C)) / T, in nats per symbol.
double entropy_rate_lz(const SymbolSequence& seq);

/// Same estimate with ln(alpha) supplied directly. Used for extended
/// alphabets whose size alpha^d is only known through d * ln(alpha).
double entropy_rate_from_count(std::size_t word_count, std::size_t length, double log_alphabet);

}  // namespace lezter
