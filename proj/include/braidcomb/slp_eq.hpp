#pragma once

#include <cstdint>

#include "braidcomb/slp.hpp"

namespace braidcomb {

/// Settings for the randomized equality tests. Verdicts are one-sided:
/// "false" is always correct; "true" can be wrong with probability at most
/// 2^-lambda (rigorously so at desk scale, see the module notes). Inputs
/// whose evaluation length is at most exact_threshold are decided exactly
/// by decompressing.
struct EqOptions {
  int lambda = 64;
  std::uint64_t exact_threshold = 1'000'000;
  std::uint64_t seed = 0x6272616964ULL;
};

/// True iff ev(a) and ev(b) are identical letter sequences.
bool monoid_eq(const CompressedWord& a, const CompressedWord& b,
               const EqOptions& opts = {});

/// True iff ev(a) freely reduces to the empty word.
bool free_group_trivial(const CompressedWord& a, const EqOptions& opts = {});

/// True iff ev(a) and ev(b) represent the same free-group element.
bool free_group_eq(const CompressedWord& a, const CompressedWord& b,
                   const EqOptions& opts = {});

}  // namespace braidcomb
