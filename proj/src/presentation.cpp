#include "braidcomb/presentation.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace braidcomb {

SurfaceParams SurfaceParams::bounded(int g, int p, int n) {
  if (g < 0 || p < 1 || n < 1) {
    throw std::invalid_argument(
        "bounded surface requires g >= 0, p >= 1, n >= 1");
  }
  return SurfaceParams{g, p, n, false};
}

SurfaceParams SurfaceParams::closed_surface(int g, int n) {
  if (g < 1 || n < 1) {
    throw std::invalid_argument("closed surface requires g >= 1, n >= 1");
  }
  return SurfaceParams{g, 0, n, true};
}

Letter::Letter(int first, int second, int sign)
    : first_(first), second_(second), sign_(sign) {
  if (first < 1 || second <= first) {
    throw InvalidLetter("letter indices must satisfy 1 <= i < j, got A(" +
                        std::to_string(first) + "," + std::to_string(second) +
                        ")");
  }
  if (sign != 1 && sign != -1) {
    throw InvalidLetter("letter sign must be +1 or -1");
  }
}

BraidWord inverse(const BraidWord& w) {
  BraidWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

bool letter_valid(Letter l, const SurfaceParams& params) {
  return l.second() >= params.first_strand_index() &&
         l.second() <= params.last_strand_index();
}

void validate_word(const BraidWord& w, const SurfaceParams& params) {
  for (const Letter& l : w) {
    if (!letter_valid(l, params)) {
      throw InvalidLetter("letter " + format_letter(l) +
                          " is not a generator of this surface braid group");
    }
  }
}

std::vector<Letter> generator_letters(const SurfaceParams& params) {
  std::vector<Letter> out;
  for (int k = 1; k <= params.strands; ++k) {
    const int j = params.strand_index(k);
    for (int i = 1; i < j; ++i) out.emplace_back(i, j);
  }
  return out;
}

std::string to_string(RelationCase c) {
  static constexpr const char* names[] = {"PR1", "PR2", "PR3",
                                          "PR4", "ER1", "ER2"};
  std::string s = names[static_cast<int>(c.family)];
  if (c.primed) s += "'";
  return s;
}

RelationCase classify_relation(Letter a, Letter u,
                               const SurfaceParams& params) {
  if (!letter_valid(a, params) || !letter_valid(u, params)) {
    throw InvalidLetter("classify_relation: letter outside the generator set");
  }
  if (a.second() >= u.second()) {
    throw NotSwappable("conjugator second index " +
                       std::to_string(a.second()) +
                       " must be smaller than target second index " +
                       std::to_string(u.second()));
  }
  const int i = a.first();
  const int j = a.second();
  const int r = u.first();
  const int g2 = 2 * params.genus;
  const bool primed = a.sign() < 0;

  RelationFamily family;
  if (r == j || r > j || r < i - 1) {
    family = (r == j) ? RelationFamily::PR2 : RelationFamily::PR1;
  } else if (r == i - 1) {
    // i = r+1: commuting unless r is odd and below 2g.
    family = (r >= g2 || r % 2 == 0) ? RelationFamily::PR1
                                     : RelationFamily::ER1;
  } else if (r == i) {
    family = RelationFamily::PR3;
  } else if (r == i + 1) {
    family = (r > g2 || r % 2 == 1) ? RelationFamily::PR4
                                    : RelationFamily::ER2;
  } else {
    family = RelationFamily::PR4;  // i+1 < r < j
  }
  return RelationCase{family, primed};
}

namespace {

// Rewrite templates for a^-1 u a (and a u a^-1 for the primed half) with
// a = A(i,j), u = A(r,s) positive. Each atom names one of the three indices
// in play and the sign it carries; the second index of every emitted letter
// is s. Inverse-signed targets reuse the same template reversed with all
// signs flipped.
enum class Ref : std::uint8_t { I, J, R };

struct TemplateAtom {
  Ref ref;
  std::int8_t sign;
};

struct RewriteTemplate {
  std::array<TemplateAtom, 9> atom;
  std::uint8_t len;
};

constexpr TemplateAtom Ip{Ref::I, 1}, Im{Ref::I, -1};
constexpr TemplateAtom Jp{Ref::J, 1}, Jm{Ref::J, -1};
constexpr TemplateAtom Rp{Ref::R, 1};

// Indexed by [primed][family].
constexpr RewriteTemplate kRewriteTable[2][6] = {
    {
        {{Rp}, 1},                                  // PR1
        {{Ip, Jp, Im}, 3},                          // PR2
        {{Ip, Jp, Ip, Jm, Im}, 5},                  // PR3
        {{Ip, Jp, Im, Jm, Rp, Jp, Ip, Jm, Im}, 9},  // PR4
        {{Rp, Ip, Jm, Im}, 4},                      // ER1
        {{Ip, Jp, Im, Rp, Jp, Ip, Jm, Im}, 8},      // ER2
    },
    {
        {{Rp}, 1},                                  // PR1'
        {{Jm, Im, Jp, Ip, Jp}, 5},                  // PR2'
        {{Jm, Ip, Jp}, 3},                          // PR3'
        {{Jm, Im, Jp, Ip, Rp, Im, Jm, Ip, Jp}, 9},  // PR4'
        {{Rp, Jp}, 2},                              // ER1'
        {{Jm, Rp, Im, Jm, Ip, Jp}, 6},              // ER2'
    },
};

}  // namespace

BraidWord conjugate_letter(Letter u, Letter a, const SurfaceParams& params) {
  const RelationCase rc = classify_relation(a, u, params);
  const RewriteTemplate& tpl =
      kRewriteTable[rc.primed ? 1 : 0][static_cast<int>(rc.family)];
  const int s = u.second();
  BraidWord out;
  out.reserve(tpl.len);
  for (std::uint8_t t = 0; t < tpl.len; ++t) {
    const TemplateAtom& atom = tpl.atom[t];
    int idx = atom.ref == Ref::I   ? a.first()
              : atom.ref == Ref::J ? a.second()
                                   : u.first();
    out.emplace_back(idx, s, atom.sign);
  }
  if (u.sign() < 0) out = inverse(out);
  return out;
}

BraidWord conjugate_word(Letter u, const BraidWord& v,
                         const SurfaceParams& params, std::uint64_t budget) {
  for (const Letter& l : v) {
    if (l.second() >= u.second()) {
      throw NotSwappable(
          "conjugate_word: every conjugator letter needs a smaller second "
          "index than the target");
    }
  }
  BraidWord word{u};
  for (const Letter& a : v) {
    BraidWord next;
    next.reserve(word.size() * 2);
    for (const Letter& x : word) {
      BraidWord piece = conjugate_letter(x, a, params);
      next.insert(next.end(), piece.begin(), piece.end());
    }
    next = free_reduce(next);
    if (next.size() > budget) {
      throw BudgetExceeded("conjugate_word: intermediate word of length " +
                           std::to_string(next.size()) +
                           " exceeds the budget of " + std::to_string(budget));
    }
    word = std::move(next);
  }
  return word;
}

BraidWord free_reduce(const BraidWord& w) {
  BraidWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

namespace {

// Parses [1-9][0-9]* starting at pos; advances pos.
int parse_int(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw SyntaxError("expected an integer", pos);
  if (text[pos] == '0') throw SyntaxError("leading zero in integer", pos);
  long value = 0;
  while (pos < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > 1'000'000) throw SyntaxError("integer too large", pos);
    ++pos;
  }
  return static_cast<int>(value);
}

void expect(std::string_view text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c)
    throw SyntaxError(std::string("expected '") + c + "'", pos);
  ++pos;
}

}  // namespace

BraidWord parse_word(std::string_view text) {
  BraidWord out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == text.size()) break;
    expect(text, pos, 'A');
    expect(text, pos, '(');
    const int i = parse_int(text, pos);
    expect(text, pos, ',');
    const int j = parse_int(text, pos);
    expect(text, pos, ')');
    int sign = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      if (pos >= text.size() || (text[pos] != '-' && text[pos] != '+'))
        throw SyntaxError("expected '+1' or '-1' after '^'", pos);
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      if (pos >= text.size() || text[pos] != '1')
        throw SyntaxError("expected exponent 1", pos);
      ++pos;
    }
    out.emplace_back(i, j, sign);  // InvalidLetter when i >= j
  }
  return out;
}

std::string format_letter(Letter l) {
  std::string s = "A(" + std::to_string(l.first()) + "," +
                  std::to_string(l.second()) + ")";
  if (l.sign() < 0) s += "^-1";
  return s;
}

std::string format_word(const BraidWord& w) {
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += ' ';
    s += format_letter(w[t]);
  }
  return s;
}

}  // namespace braidcomb
