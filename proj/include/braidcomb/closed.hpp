#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidcomb/combing.hpp"

namespace braidcomb {

// A word in the surface group generators a_1..a_2g, stored as signed
// indices: +i is a_i, -i is a_i^-1.
using Pi1Word = std::vector<int>;

Pi1Word parse_pi1_word(std::string_view text);
std::string format_pi1_word(const Pi1Word& w);
Pi1Word pi1_inverse(const Pi1Word& w);
Pi1Word pi1_free_reduce(const Pi1Word& w);

/// The defining relator [a_2g^-1, a_2g-1][a_2g-2^-1, a_2g-3]...[a_2^-1, a_1];
/// length 4g.
Pi1Word pi1_relator(int genus);

/// Canonical form for surface group elements. Genus 1 is abelian and uses
/// exponent vectors; genus >= 2 greedily replaces any subword longer than
/// half of a cyclic rotation of the relator (or its inverse) by the shorter
/// complement, leftmost-longest first, until none remains.
Pi1Word pi1_normal_form(const Pi1Word& w, int genus);

/// B_k: the strand-k block A(2g,j_k) A(j_1,j_k) ... A(j_k-1,j_k); length k.
BraidWord b_word(const SurfaceParams& params, int k);

/// The group section of the strand-1 projection: a_i maps to A(i,j_1) for
/// i < 2g and a_2g maps to B_1...B_n.
BraidWord section_s(const Pi1Word& gamma, const SurfaceParams& params);

/// The retraction-style section: a_i maps to A(i,j_1) for odd i and to
/// A(i,j_1) B_2...B_n for even i.
BraidWord section_rho(const Pi1Word& gamma, const SurfaceParams& params);

/// Strand-1 projection: keeps A(i,j_1)^s as a_i^s, kills everything else.
Pi1Word project_to_pi1(const BraidWord& w, const SurfaceParams& params);

/// The bounded surface obtained by trading the first puncture for a
/// boundary component: genus g, one boundary, n-1 strands.
SurfaceParams punctured_params(const SurfaceParams& params);

/// Letter-wise isomorphism from the kernel of the strand-1 projection onto
/// the braid group of punctured_params(params). Throws NotKernel when a
/// letter moves strand 1.
BraidWord f_rewrite(const BraidWord& w, const SurfaceParams& params);

// The two sides of the closed-surface twist relation for strand k: the
// commutator word over the A(.,j_k) and the product of strand letters it
// equals. Index k = 1 drives the j_1 elimination in closed_comb.
BraidWord tr_relator_word(const SurfaceParams& params, int k);
BraidWord tr_kernel_word(const SurfaceParams& params, int k);

/// Moves every j_1 letter to the front by leftward swaps; returns the j_1
/// prefix and the kernel remainder. Exponential, budget-guarded.
std::pair<BraidWord, BraidWord> closed_comb_stage1(const BraidWord& w,
                                                   const SurfaceParams& params,
                                                   std::uint64_t budget);

struct ClosedDecomposition {
  Pi1Word gamma;
  CombedNormalForm kernel;
};

/// Splits w along the strand-1 projection: gamma is the normal form of the
/// projection, and the kernel part s(gamma)^-1 w is rewritten into kernel
/// generators (eliminating leftover j_1 letters through the twist relation)
/// and combed over the punctured surface. Throws ReductionStuck when the
/// elimination finds no half-relator subword, BudgetExceeded past budget.
ClosedDecomposition closed_comb(const BraidWord& w, const SurfaceParams& params,
                                std::uint64_t budget);

nlohmann::json closed_to_json(const ClosedDecomposition& dec);

}  // namespace braidcomb
