#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "braidcomb/presentation.hpp"

namespace braidcomb {

// Exact decompressed length; routinely exponential in the program size.
using EvalLength = boost::multiprecision::cpp_int;

/// A straight-line program over a letter alphabet: ranked production rules
/// where rule q-1 is the root and rule i may reference only rules with a
/// strictly smaller index. Immutable after construction.
///
/// Symbols are packed into int32: +k is terminal k-1, -k is rule k-1.
/// Rules are stored as one flat symbol buffer plus per-rule end offsets.
/// Nonterminals with empty productions (other than the root) are pruned at
/// construction; rankedness violations throw std::invalid_argument.
class CompressedWord {
 public:
  using Symbol = std::int32_t;

  static Symbol terminal_symbol(std::size_t index) {
    return static_cast<Symbol>(index) + 1;
  }
  static Symbol nonterminal_symbol(std::size_t index) {
    return -static_cast<Symbol>(index) - 1;
  }
  static bool symbol_is_terminal(Symbol s) { return s > 0; }
  static std::size_t symbol_index(Symbol s) {
    return static_cast<std::size_t>((s > 0 ? s : -s) - 1);
  }

  /// The canonical program for the empty word.
  CompressedWord();
  CompressedWord(std::vector<Letter> terminals,
                 const std::vector<std::vector<Symbol>>& rules);
  /// Flat-buffer constructor: rule i is symbols[rule_ends[i-1]..rule_ends[i]).
  CompressedWord(std::vector<Letter> terminals, std::vector<Symbol> symbols,
                 std::vector<std::uint32_t> rule_ends);

  std::size_t rule_count() const { return rule_ends_.size(); }
  std::span<const Symbol> rule(std::size_t i) const;
  std::size_t root() const { return rule_count() - 1; }
  const std::vector<Letter>& terminals() const { return terminals_; }

  /// Sum of all production lengths.
  std::size_t size() const { return symbols_.size(); }

  EvalLength eval_length() const;
  EvalLength eval_length_of(std::size_t nonterminal) const;

  /// The full decompressed word. Throws TooLong (without expanding anything)
  /// when the exact evaluation length exceeds max_len.
  BraidWord evaluate(std::uint64_t max_len) const;
  BraidWord evaluate_nonterminal(std::size_t nonterminal,
                                 std::uint64_t max_len) const;

  static CompressedWord from_word(const BraidWord& w);

  bool operator==(const CompressedWord&) const = default;

 private:
  void normalize_and_check();

  std::vector<Letter> terminals_;
  std::vector<Symbol> symbols_;
  std::vector<std::uint32_t> rule_ends_;
};

/// Evaluates to ev(a)·ev(b); size grows to |a|+|b|+2. Throws AlphabetMismatch
/// when both operands carry single-strand alphabets over different strands.
CompressedWord concat(const CompressedWord& a, const CompressedWord& b);

/// Evaluates to the formal inverse of ev(a): every production mirrored,
/// every terminal sign flipped. Same size.
CompressedWord invert(const CompressedWord& a);

/// A program evaluating to the free reduction of ev(a). Decompress-guarded:
/// exact but exponential-capable, intended for printing at desk scale.
CompressedWord reduce(const CompressedWord& a, std::uint64_t max_len);

/// The two-terminal family whose n-th evaluation is the concatenation of the
/// two previous ones; evaluation length grows as the Fibonacci numbers while
/// the program size stays 2n-2.
CompressedWord fibonacci_slp(int n);

// JSON form: {"terminals":[letter...], "rules":[{"lhs":"X1","rhs":[sym...]},
// ...], "root":"Xq"}; symbols are letter strings or rule names. Round-trips
// bit-exactly.
nlohmann::json slp_to_json(const CompressedWord& a);
CompressedWord slp_from_json(const nlohmann::json& j);

}  // namespace braidcomb
