#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "braidcomb/errors.hpp"

namespace braidcomb {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Surface and strand-count data. Strand indices j_k are always derived,
/// never stored: j_k = (2g+p-1)+k on a bounded surface and 2g+k on a
/// closed one.
struct SurfaceParams {
  int genus = 0;
  int boundaries = 1;  // forced to 0 in closed mode
  int strands = 1;
  bool closed = false;

  static SurfaceParams bounded(int g, int p, int n);
  static SurfaceParams closed_surface(int g, int n);

  int index_offset() const {
    return closed ? 2 * genus : 2 * genus + boundaries - 1;
  }
  int strand_index(int k) const { return index_offset() + k; }  // j_k
  int first_strand_index() const { return strand_index(1); }
  int last_strand_index() const { return strand_index(strands); }
  // Inverse of strand_index; meaningful only for j_1 <= j <= j_n.
  int strand_of(int second_index) const {
    return second_index - index_offset();
  }

  bool operator==(const SurfaceParams&) const = default;
};

/// Signed generator A(i,j)^s with 1 <= i < j and s in {-1,+1}.
class Letter {
 public:
  Letter(int first, int second, int sign = 1);

  int first() const { return first_; }
  int second() const { return second_; }
  int sign() const { return sign_; }
  // First index with the letter's sign attached; the second index is
  // carried implicitly when a whole word lives over one strand.
  int signed_first() const { return sign_ * first_; }

  Letter inverse() const { return Letter(first_, second_, -sign_); }

  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;

 private:
  int first_;
  int second_;
  int sign_;
};

using BraidWord = std::vector<Letter>;

BraidWord inverse(const BraidWord& w);
bool letter_valid(Letter l, const SurfaceParams& params);
void validate_word(const BraidWord& w, const SurfaceParams& params);
std::vector<Letter> generator_letters(const SurfaceParams& params);

// The twelve conjugation-rewrite cases. An unprimed case rewrites
// a^-1 u a (conjugator sign +1); the primed variant rewrites a u a^-1.
enum class RelationFamily : std::uint8_t { PR1, PR2, PR3, PR4, ER1, ER2 };

struct RelationCase {
  RelationFamily family;
  bool primed;
  bool operator==(const RelationCase&) const = default;
};

std::string to_string(RelationCase c);

/// Picks the unique rewrite case for moving conjugator `a` left past
/// target `u`. Requires second(a) < second(u).
RelationCase classify_relation(Letter a, Letter u, const SurfaceParams& params);

/// The word W over the second(u) alphabet with W = a^-1 u a in the group;
/// |W| <= 9 and every letter of W has second index second(u).
BraidWord conjugate_letter(Letter u, Letter a, const SurfaceParams& params);

/// v^-1 u v as a freely reduced word over the second(u) alphabet. Length can
/// grow by a factor of up to 9 per letter of v; `budget` caps the length of
/// every intermediate word.
BraidWord conjugate_word(Letter u, const BraidWord& v,
                         const SurfaceParams& params,
                         std::uint64_t budget = kDefaultBudget);

/// Deletes adjacent inverse pairs until none remain. Idempotent.
BraidWord free_reduce(const BraidWord& w);

// Word grammar: word := (letter ws)*; letter := "A(" int "," int ")"
// ["^-1" | "^+1"]. Formatting emits single spaces and omits "^+1".
BraidWord parse_word(std::string_view text);
std::string format_word(const BraidWord& w);
std::string format_letter(Letter l);

}  // namespace braidcomb
