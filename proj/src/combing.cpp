#include "braidcomb/combing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace braidcomb {

PairEncoding extract_factor_encoding(const BraidWord& w, int k,
                                     const SurfaceParams& params) {
  if (k < 1 || k > params.strands) {
    throw std::invalid_argument("factor index out of range");
  }
  validate_word(w, params);
  const int jk = params.strand_index(k);

  PairEncoding enc;
  enc.factor = k;
  std::size_t first = w.size();
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (w[t].second() == jk) {
      first = t;
      break;
    }
  }
  if (first == w.size()) return enc;
  for (std::size_t t = first + 1; t < w.size(); ++t) {
    if (w[t].second() < jk) enc.conjugator.push_back(w[t]);
  }
  int d = static_cast<int>(enc.conjugator.size());
  for (std::size_t t = first; t < w.size(); ++t) {
    if (w[t].second() == jk) {
      enc.pairs.emplace_back(w[t].signed_first(), d);
    } else if (w[t].second() < jk) {
      --d;
    }
  }
  return enc;
}

CompressedWord build_factor_slp(const PairEncoding& enc,
                                const SurfaceParams& params) {
  if (enc.pairs.empty()) return CompressedWord();
  const int jk = params.strand_index(enc.factor);
  const int max_first = jk - 1;
  const int width = 2 * max_first + 1;  // column for c is c + max_first
  const int depth = static_cast<int>(enc.conjugator.size());

  const auto column = [max_first](int c) { return c + max_first; };
  const auto letter_of = [jk](int c) {
    return Letter(c > 0 ? c : -c, jk, c > 0 ? 1 : -1);
  };
  // Signed first indices of the conjugate of letter c by conjugator[pos].
  const auto conj_codes = [&](int c, int pos) {
    std::vector<int> out;
    const BraidWord word =
        conjugate_letter(letter_of(c), enc.conjugator[pos], params);
    out.reserve(word.size());
    for (const Letter& l : word) out.push_back(l.signed_first());
    return out;
  };

  for (const auto& [c, d] : enc.pairs) {
    if (c == 0 || c > max_first || c < -max_first || d < 0 || d > depth) {
      throw std::invalid_argument("pair encoding out of range");
    }
  }

  // Mark the (c,d) cells reachable from the root pairs and the terminals
  // they touch; the table keeps memory proportional to what is used.
  std::vector<char> marked(static_cast<std::size_t>(width) * (depth + 1), 0);
  std::vector<char> terminal_used(width, 0);
  std::vector<std::pair<int, int>> stack;
  const auto visit = [&](int c, int d) {
    if (d == 0) {
      terminal_used[column(c)] = 1;
      return;
    }
    char& cell = marked[static_cast<std::size_t>(d) * width + column(c)];
    if (!cell) {
      cell = 1;
      stack.emplace_back(c, d);
    }
  };
  for (const auto& [c, d] : enc.pairs) visit(c, d);
  while (!stack.empty()) {
    const auto [c, d] = stack.back();
    stack.pop_back();
    for (int e : conj_codes(c, depth - d)) visit(e, d - 1);
  }

  // Terminals ordered by signed first index.
  std::vector<Letter> terminals;
  std::vector<CompressedWord::Symbol> terminal_sym(width, 0);
  for (int c = -max_first; c <= max_first; ++c) {
    if (c != 0 && terminal_used[column(c)]) {
      terminal_sym[column(c)] = CompressedWord::terminal_symbol(terminals.size());
      terminals.push_back(letter_of(c));
    }
  }

  // Emit rules level by level (d ascending, c ascending), root last.
  std::vector<CompressedWord::Symbol> symbols;
  std::vector<std::uint32_t> ends;
  std::vector<CompressedWord::Symbol> cell_sym(marked.size(), 0);
  const auto symbol_at = [&](int c, int d) {
    return d == 0 ? terminal_sym[column(c)]
                  : cell_sym[static_cast<std::size_t>(d) * width + column(c)];
  };
  std::size_t next_rule = 0;
  for (int d = 1; d <= depth; ++d) {
    for (int c = -max_first; c <= max_first; ++c) {
      if (c == 0 || !marked[static_cast<std::size_t>(d) * width + column(c)])
        continue;
      for (int e : conj_codes(c, depth - d)) symbols.push_back(symbol_at(e, d - 1));
      ends.push_back(static_cast<std::uint32_t>(symbols.size()));
      cell_sym[static_cast<std::size_t>(d) * width + column(c)] =
          CompressedWord::nonterminal_symbol(next_rule++);
    }
  }
  for (const auto& [c, d] : enc.pairs) symbols.push_back(symbol_at(c, d));
  ends.push_back(static_cast<std::uint32_t>(symbols.size()));
  return CompressedWord(std::move(terminals), std::move(symbols),
                        std::move(ends));
}

CombedNormalForm comb_compressed(const BraidWord& w,
                                 const SurfaceParams& params) {
  if (params.closed) {
    throw std::invalid_argument("comb_compressed expects a bounded surface");
  }
  validate_word(w, params);
  CombedNormalForm cnf;
  cnf.params = params;
  const int j1 = params.first_strand_index();
  BraidWord first;
  for (const Letter& l : w) {
    if (l.second() == j1) first.push_back(l);
  }
  cnf.factor1 = free_reduce(first);
  cnf.factors.reserve(params.strands > 0 ? params.strands - 1 : 0);
  for (int k = 2; k <= params.strands; ++k) {
    cnf.factors.push_back(
        build_factor_slp(extract_factor_encoding(w, k, params), params));
  }
  return cnf;
}

std::vector<BraidWord> comb_classical(const BraidWord& w,
                                      const SurfaceParams& params,
                                      std::uint64_t budget) {
  if (params.closed) {
    throw std::invalid_argument("comb_classical expects a bounded surface");
  }
  validate_word(w, params);
  BraidWord word = free_reduce(w);
  std::uint64_t work = 0;
  std::size_t scan = 0;
  while (true) {
    // The prefix before `scan` is known to be sorted by second index.
    std::size_t i = word.size();
    for (std::size_t t = scan; t + 1 < word.size(); ++t) {
      if (word[t].second() > word[t + 1].second()) {
        i = t;
        break;
      }
    }
    if (i == word.size()) break;
    const Letter small = word[i + 1];
    const BraidWord piece = conjugate_letter(word[i], small, params);
    work += 1 + piece.size();
    if (work > budget) {
      throw BudgetExceeded("comb_classical: exceeded the letter budget of " +
                           std::to_string(budget));
    }
    BraidWord next;
    next.reserve(word.size() + piece.size());
    next.insert(next.end(), word.begin(), word.begin() + i);
    next.push_back(small);
    next.insert(next.end(), piece.begin(), piece.end());
    next.insert(next.end(), word.begin() + i + 2, word.end());
    const std::size_t unreduced = next.size();
    word = free_reduce(next);
    // Cancellation starts at the splice seams; everything it could have
    // reached lies within `removed` positions of i.
    const std::size_t removed = unreduced - word.size();
    scan = i > removed + 1 ? i - removed - 1 : 0;
  }

  std::vector<BraidWord> factors(params.strands);
  for (const Letter& l : word) {
    factors[params.strand_of(l.second()) - 1].push_back(l);
  }
  return factors;
}

bool cnf_equal(const CombedNormalForm& a, const CombedNormalForm& b,
               const EqOptions& opts) {
  if (a.params != b.params) return false;
  if (a.factor1 != b.factor1) return false;
  for (std::size_t t = 0; t < a.factors.size(); ++t) {
    if (!free_group_eq(a.factors[t], b.factors[t], opts)) return false;
  }
  return true;
}

bool words_equal(const BraidWord& w1, const BraidWord& w2,
                 const SurfaceParams& params, const EqOptions& opts) {
  return cnf_equal(comb_compressed(w1, params), comb_compressed(w2, params),
                   opts);
}

BraidWord beta_word(int m) {
  if (m < 1) throw std::invalid_argument("beta_word needs m >= 1");
  const Letter a12(1, 2), a23(2, 3), a34(3, 4);
  BraidWord w;
  w.reserve(4 * static_cast<std::size_t>(m) + 1);
  for (int t = 0; t < m; ++t) {
    w.push_back(a23.inverse());
    w.push_back(a12);
  }
  w.push_back(a34);
  for (int t = 0; t < m; ++t) {
    w.push_back(a12.inverse());
    w.push_back(a23);
  }
  return w;
}

nlohmann::json cnf_to_json(const CombedNormalForm& cnf) {
  nlohmann::json factors = nlohmann::json::array();
  nlohmann::json sizes = nlohmann::json::array();
  nlohmann::json lengths = nlohmann::json::array();
  for (const CompressedWord& f : cnf.factors) {
    factors.push_back(slp_to_json(f));
    sizes.push_back(f.size());
    lengths.push_back(f.eval_length().str());
  }
  return {{"params",
           {{"g", cnf.params.genus},
            {"p", cnf.params.boundaries},
            {"n", cnf.params.strands}}},
          {"factor1", format_word(cnf.factor1)},
          {"factors", factors},
          {"sizes", sizes},
          {"eval_lengths", lengths}};
}

}  // namespace braidcomb
