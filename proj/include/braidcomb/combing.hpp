#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "braidcomb/slp.hpp"
#include "braidcomb/slp_eq.hpp"

namespace braidcomb {

/// Linear-size description of one combed factor: the single conjugator word
/// v shared by all occurrences, plus one (c,d) pair per letter that moves
/// strand k. |c| is the letter's first index, the sign of c its exponent,
/// and d selects the suffix of v of length d that conjugates it.
struct PairEncoding {
  int factor = 0;  // k
  BraidWord conjugator;
  std::vector<std::pair<int, int>> pairs;

  bool operator==(const PairEncoding&) const = default;
};

/// Two passes over w, O(|w|).
PairEncoding extract_factor_encoding(const BraidWord& w, int k,
                                     const SurfaceParams& params);

/// The factor program: terminals are the signed strand-k letters; one
/// nonterminal per (c,d) reachable from the root, ordered by d then c, each
/// producing the conjugation of its letter by one more letter of v. Size is
/// bounded by 19(2g+p+n)|w|.
CompressedWord build_factor_slp(const PairEncoding& enc,
                                const SurfaceParams& params);

/// Factor 1 as a plain reduced word (its conjugators are always empty) and
/// factors 2..n as compressed words; factor k lives at index k-2.
struct CombedNormalForm {
  SurfaceParams params;
  BraidWord factor1;
  std::vector<CompressedWord> factors;
};

/// Polynomial combing: every factor built from its pair encoding.
CombedNormalForm comb_compressed(const BraidWord& w,
                                 const SurfaceParams& params);

/// Exponential reference combing: repeatedly rewrites the leftmost adjacent
/// out-of-order pair and freely reduces, then splits by strand. Returns the
/// n reduced factor words. The budget caps total letters produced.
std::vector<BraidWord> comb_classical(const BraidWord& w,
                                      const SurfaceParams& params,
                                      std::uint64_t budget);

/// Factor-wise comparison of two combed normal forms: factor 1 as reduced
/// words, the rest in the free group.
bool cnf_equal(const CombedNormalForm& a, const CombedNormalForm& b,
               const EqOptions& opts = {});

/// Whether two words represent the same braid, up to the one-sided error
/// bound of the randomized free-group comparison.
bool words_equal(const BraidWord& w1, const BraidWord& w2,
                 const SurfaceParams& params, const EqOptions& opts = {});

/// The 4m+1 letter stress family for the beta demo: the m-fold conjugate of
/// A(3,4) by A(1,2)^-1 A(2,3) in the 4-strand disc group. Its combed fourth
/// factor is exponentially long in m.
BraidWord beta_word(int m);

nlohmann::json cnf_to_json(const CombedNormalForm& cnf);

}  // namespace braidcomb
