#include "lezter/lz.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace lezter {

SymbolSequence::SymbolSequence(std::vector<Symbol> symbols, Symbol alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0) throw std::invalid_argument("alphabet size must be positive");
  for (Symbol s : symbols_) {
    if (s >= alphabet_size_) throw std::invalid_argument("symbol out of alphabet");
  }
}

SymbolSequence SymbolSequence::from_digits(std::string_view digits, Symbol alphabet_size) {
  std::vector<Symbol> out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("non-digit character in symbol string");
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return {std::move(out), alphabet_size};
}

namespace {

// Suffix automaton over a densely relabelled copy of the input. Each state
// remembers the end position of the first occurrence of its strings, which
// is all the LZ76 novelty test needs.
class SuffixAutomaton {
 public:
  SuffixAutomaton(std::span<const std::uint32_t> text, std::size_t alphabet)
      : root_edges_(alphabet, kNone) {
    states_.reserve(2 * text.size() + 1);
    states_.push_back({0, kNone, 0, {}});
    for (std::size_t i = 0; i < text.size(); ++i) extend(text[i], static_cast<std::int32_t>(i));
  }

  [[nodiscard]] std::int32_t next(std::int32_t state, std::uint32_t c) const {
    if (state == 0) return root_edges_[c];
    for (const auto& [sym, to] : states_[state].edges) {
      if (sym == c) return to;
    }
    return kNone;
  }

  [[nodiscard]] std::int32_t first_end(std::int32_t state) const { return states_[state].first_end; }

 private:
  static constexpr std::int32_t kNone = -1;

  struct State {
    std::int32_t len;
    std::int32_t link;
    std::int32_t first_end;
    std::vector<std::pair<std::uint32_t, std::int32_t>> edges;
  };

  void set_edge(std::int32_t state, std::uint32_t c, std::int32_t to) {
    if (state == 0) {
      root_edges_[c] = to;
      return;
    }
    for (auto& [sym, target] : states_[state].edges) {
      if (sym == c) {
        target = to;
        return;
      }
    }
    states_[state].edges.emplace_back(c, to);
  }

  void extend(std::uint32_t c, std::int32_t pos) {
    const auto cur = static_cast<std::int32_t>(states_.size());
    states_.push_back({states_[last_].len + 1, 0, pos, {}});
    std::int32_t p = last_;
    while (p != kNone && next(p, c) == kNone) {
      set_edge(p, c, cur);
      p = states_[p].link;
    }
    if (p != kNone) {
      const std::int32_t q = next(p, c);
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const auto clone = static_cast<std::int32_t>(states_.size());
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(std::move(copy));
        while (p != kNone && next(p, c) == q) {
          set_edge(p, c, clone);
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  std::vector<State> states_;
  std::vector<std::int32_t> root_edges_;
  std::int32_t last_ = 0;
};

// Relabels symbols to 0..k-1 in order of first appearance. LZ76 parsing
// only depends on symbol equality, so this does not change the result.
std::vector<std::uint32_t> dense_relabel(std::span<const Symbol> symbols, std::size_t& alphabet) {
  std::vector<std::uint32_t> out(symbols.size());
  std::unordered_map<Symbol, std::uint32_t> labels;
  labels.reserve(symbols.size() < 4096 ? symbols.size() : 4096);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto [it, inserted] = labels.try_emplace(symbols[i], static_cast<std::uint32_t>(labels.size()));
    out[i] = it->second;
  }
  alphabet = labels.size();
  return out;
}

}  // namespace

ParseResult lz76_parse(const SymbolSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("empty input");
  if (seq.size() > static_cast<std::size_t>(INT32_MAX / 2)) {
    throw std::invalid_argument("sequence too long");
  }

  std::size_t alphabet = 0;
  const auto text = dense_relabel(seq.symbols(), alphabet);
  const SuffixAutomaton sam(text, alphabet);

  const auto length = static_cast<std::int32_t>(text.size());
  ParseResult result;
  std::int32_t start = 0;
  while (start < length) {
    std::int32_t state = 0;
    std::int32_t end = start;
    for (;;) {
      state = sam.next(state, text[end]);
      // seq[start..end] occurs inside seq[0..end-1] iff its first occurrence
      // ends before `end`.
      const bool seen = sam.first_end(state) < end;
      if (!seen || end + 1 == length) break;
      ++end;
    }
    result.word_boundaries.push_back(static_cast<std::size_t>(end) + 1);
    start = end + 1;
  }
  result.word_count = result.word_boundaries.size();
  return result;
}

std::size_t lz76_word_count(const SymbolSequence& seq) { return lz76_parse(seq).word_count; }

double entropy_rate_from_count(std::size_t word_count, std::size_t length, double log_alphabet) {
  if (length < 2) throw std::invalid_argument("sequence too short");
  const auto c = static_cast<double>(word_count);
  return c * (log_alphabet + std::log(c)) / static_cast<double>(length);
}

double entropy_rate_lz(const SymbolSequence& seq) {
  if (seq.size() < 2) throw std::invalid_argument("sequence too short");
  return entropy_rate_from_count(lz76_word_count(seq), seq.size(),
                                 std::log(static_cast<double>(seq.alphabet_size())));
}

}  // namespace lezter
