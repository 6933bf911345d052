#include "braidcomb/closed.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace braidcomb {

namespace {

void require_closed(const SurfaceParams& params, const char* where) {
  if (!params.closed || params.genus < 1) {
    throw std::invalid_argument(std::string(where) +
                                " expects a closed surface of genus >= 1");
  }
}

void validate_pi1(const Pi1Word& w, int genus) {
  for (int s : w) {
    const int i = s > 0 ? s : -s;
    if (i < 1 || i > 2 * genus) {
      throw InvalidLetter("surface group index " + std::to_string(i) +
                          " outside 1..2g");
    }
  }
}

}  // namespace

Pi1Word parse_pi1_word(std::string_view text) {
  Pi1Word out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == text.size()) break;
    if (text[pos] != 'a') throw SyntaxError("expected 'a'", pos);
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])) ||
        text[pos] == '0')
      throw SyntaxError("expected a generator index", pos);
    int index = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      index = index * 10 + (text[pos] - '0');
      if (index > 1'000'000) throw SyntaxError("index too large", pos);
      ++pos;
    }
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
    out.push_back(sign * index);
  }
  return out;
}

std::string format_pi1_word(const Pi1Word& w) {
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += ' ';
    s += "a" + std::to_string(w[t] > 0 ? w[t] : -w[t]);
    if (w[t] < 0) s += "^-1";
  }
  return s;
}

Pi1Word pi1_inverse(const Pi1Word& w) {
  Pi1Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Pi1Word pi1_free_reduce(const Pi1Word& w) {
  Pi1Word out;
  out.reserve(w.size());
  for (int s : w) {
    if (!out.empty() && out.back() == -s) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Pi1Word pi1_relator(int genus) {
  if (genus < 1) throw std::invalid_argument("relator needs genus >= 1");
  Pi1Word r;
  r.reserve(4 * genus);
  // Handles pair up as (a_2i-1, a_2i), matching the parity conditions of
  // the ER rewrite cases.
  for (int i = 2 * genus; i >= 2; i -= 2) {
    // [a_i^-1, a_i-1]
    r.push_back(-i);
    r.push_back(i - 1);
    r.push_back(i);
    r.push_back(-(i - 1));
  }
  return r;
}

namespace {

struct RelatorMatch {
  std::size_t pos;  // start in the scanned word
  std::size_t len;  // matched length, > |relator|/2
  int offset;       // cyclic rotation offset
  bool inverted;    // matched against the inverted relator
};

// Leftmost-longest subword that is more than half of some cyclic rotation
// of the relator or its inverse. Ties prefer the relator over its inverse,
// then the smaller rotation offset.
std::optional<RelatorMatch> find_half_match(const std::vector<int>& w,
                                            const Pi1Word& relator) {
  const std::size_t rlen = relator.size();
  const std::size_t need = rlen / 2 + 1;
  if (w.size() < need) return std::nullopt;
  const Pi1Word inv = pi1_inverse(relator);
  for (std::size_t pos = 0; pos + need <= w.size(); ++pos) {
    std::optional<RelatorMatch> best;
    for (int side = 0; side < 2; ++side) {
      const Pi1Word& src = side == 0 ? relator : inv;
      for (std::size_t off = 0; off < rlen; ++off) {
        std::size_t len = 0;
        while (len < rlen && pos + len < w.size() &&
               w[pos + len] == src[(off + len) % rlen]) {
          ++len;
        }
        if (len >= need && (!best || len > best->len)) {
          best = RelatorMatch{pos, len, static_cast<int>(off), side == 1};
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

// The words x and v with rot_off(src) = x^-1 · src · x = matched · v.
struct MatchPieces {
  Pi1Word x;
  Pi1Word v;
};

MatchPieces match_pieces(const RelatorMatch& m, const Pi1Word& relator) {
  const Pi1Word src = m.inverted ? pi1_inverse(relator) : relator;
  MatchPieces out;
  out.x.assign(src.begin(), src.begin() + m.offset);
  const std::size_t rlen = src.size();
  for (std::size_t t = m.len; t < rlen; ++t) {
    out.v.push_back(src[(m.offset + t) % rlen]);
  }
  return out;
}

}  // namespace

Pi1Word pi1_normal_form(const Pi1Word& w, int genus) {
  if (genus < 1) throw std::invalid_argument("normal form needs genus >= 1");
  validate_pi1(w, genus);
  if (genus == 1) {
    long x = 0, y = 0;
    for (int s : w) {
      (s == 1 || s == -1 ? x : y) += s > 0 ? 1 : -1;
    }
    Pi1Word out;
    for (long t = 0; t < (x > 0 ? x : -x); ++t) out.push_back(x > 0 ? 1 : -1);
    for (long t = 0; t < (y > 0 ? y : -y); ++t) out.push_back(y > 0 ? 2 : -2);
    return out;
  }

  const Pi1Word relator = pi1_relator(genus);
  Pi1Word word = pi1_free_reduce(w);
  while (auto m = find_half_match(word, relator)) {
    const MatchPieces pieces = match_pieces(*m, relator);
    Pi1Word next(word.begin(), word.begin() + m->pos);
    const Pi1Word tail = pi1_inverse(pieces.v);
    next.insert(next.end(), tail.begin(), tail.end());
    next.insert(next.end(), word.begin() + m->pos + m->len, word.end());
    word = pi1_free_reduce(next);
  }
  return word;
}

BraidWord b_word(const SurfaceParams& params, int k) {
  require_closed(params, "b_word");
  if (k < 1 || k > params.strands) {
    throw std::invalid_argument("b_word index out of range");
  }
  const int jk = params.strand_index(k);
  BraidWord out;
  out.reserve(k);
  out.emplace_back(2 * params.genus, jk);
  for (int t = 1; t < k; ++t) out.emplace_back(params.strand_index(t), jk);
  return out;
}

namespace {

BraidWord append_signed(BraidWord word, const BraidWord& image, int sign) {
  if (sign > 0) {
    word.insert(word.end(), image.begin(), image.end());
  } else {
    const BraidWord inv = inverse(image);
    word.insert(word.end(), inv.begin(), inv.end());
  }
  return word;
}

}  // namespace

BraidWord section_s(const Pi1Word& gamma, const SurfaceParams& params) {
  require_closed(params, "section_s");
  validate_pi1(gamma, params.genus);
  const int j1 = params.first_strand_index();
  BraidWord all_blocks;
  for (int k = 1; k <= params.strands; ++k) {
    const BraidWord bk = b_word(params, k);
    all_blocks.insert(all_blocks.end(), bk.begin(), bk.end());
  }
  BraidWord out;
  for (int s : gamma) {
    const int i = s > 0 ? s : -s;
    if (i < 2 * params.genus) {
      out.emplace_back(i, j1, s > 0 ? 1 : -1);
    } else {
      out = append_signed(std::move(out), all_blocks, s);
    }
  }
  return out;
}

BraidWord section_rho(const Pi1Word& gamma, const SurfaceParams& params) {
  require_closed(params, "section_rho");
  validate_pi1(gamma, params.genus);
  const int j1 = params.first_strand_index();
  BraidWord tail_blocks;
  for (int k = 2; k <= params.strands; ++k) {
    const BraidWord bk = b_word(params, k);
    tail_blocks.insert(tail_blocks.end(), bk.begin(), bk.end());
  }
  BraidWord out;
  for (int s : gamma) {
    const int i = s > 0 ? s : -s;
    if (i % 2 == 1) {
      out.emplace_back(i, j1, s > 0 ? 1 : -1);
    } else {
      BraidWord image{Letter(i, j1)};
      image.insert(image.end(), tail_blocks.begin(), tail_blocks.end());
      out = append_signed(std::move(out), image, s);
    }
  }
  return out;
}

Pi1Word project_to_pi1(const BraidWord& w, const SurfaceParams& params) {
  require_closed(params, "project_to_pi1");
  validate_word(w, params);
  const int j1 = params.first_strand_index();
  Pi1Word out;
  for (const Letter& l : w) {
    if (l.second() == j1) out.push_back(l.signed_first());
  }
  return out;
}

SurfaceParams punctured_params(const SurfaceParams& params) {
  require_closed(params, "punctured_params");
  if (params.strands < 2) {
    throw std::invalid_argument(
        "the punctured surface needs at least one remaining strand");
  }
  return SurfaceParams::bounded(params.genus, 1, params.strands - 1);
}

BraidWord f_rewrite(const BraidWord& w, const SurfaceParams& params) {
  require_closed(params, "f_rewrite");
  const SurfaceParams target = punctured_params(params);
  validate_word(w, params);
  const int j1 = params.first_strand_index();
  const int g2 = 2 * params.genus;
  const int n = params.strands;

  // Image of A(j_1, j_k): the relator commutators over the previous strand
  // times the inverse of the two strand products.
  const auto puncture_image = [&](int k) {
    const int jk1 = target.strand_index(k - 1);
    BraidWord image;
    for (int i = g2; i >= 2; i -= 2) {
      image.emplace_back(i, jk1, -1);
      image.emplace_back(i - 1, jk1);
      image.emplace_back(i, jk1);
      image.emplace_back(i - 1, jk1, -1);
    }
    BraidWord products;
    for (int t = 1; t <= k - 2; ++t)
      products.emplace_back(target.strand_index(t), jk1);
    for (int t = k; t <= n - 1; ++t)
      products.emplace_back(jk1, target.strand_index(t));
    const BraidWord inv = inverse(products);
    image.insert(image.end(), inv.begin(), inv.end());
    return image;
  };

  BraidWord out;
  for (const Letter& l : w) {
    if (l.second() == j1) {
      throw NotKernel("f_rewrite: letter " + format_letter(l) +
                      " moves the first strand");
    }
    const int k = params.strand_of(l.second());
    const int i = l.first();
    if (i <= g2) {
      out.emplace_back(i, target.strand_index(k - 1), l.sign());
    } else if (i == j1) {
      out = append_signed(std::move(out), puncture_image(k), l.sign());
    } else {
      out.emplace_back(i - 1, target.strand_index(k - 1), l.sign());
    }
  }
  return out;
}

BraidWord tr_relator_word(const SurfaceParams& params, int k) {
  require_closed(params, "tr_relator_word");
  if (k < 1 || k > params.strands) {
    throw std::invalid_argument("twist relation index out of range");
  }
  const int jk = params.strand_index(k);
  BraidWord out;
  for (int i = 2 * params.genus; i >= 2; i -= 2) {
    out.emplace_back(i, jk, -1);
    out.emplace_back(i - 1, jk);
    out.emplace_back(i, jk);
    out.emplace_back(i - 1, jk, -1);
  }
  return out;
}

BraidWord tr_kernel_word(const SurfaceParams& params, int k) {
  require_closed(params, "tr_kernel_word");
  if (k < 1 || k > params.strands) {
    throw std::invalid_argument("twist relation index out of range");
  }
  const int jk = params.strand_index(k);
  BraidWord out;
  for (int l = 2 * params.genus + 1; l < jk; ++l) out.emplace_back(l, jk);
  for (int j = jk + 1; j <= params.last_strand_index(); ++j)
    out.emplace_back(jk, j);
  return out;
}

std::pair<BraidWord, BraidWord> closed_comb_stage1(const BraidWord& w,
                                                   const SurfaceParams& params,
                                                   std::uint64_t budget) {
  require_closed(params, "closed_comb_stage1");
  validate_word(w, params);
  const int j1 = params.first_strand_index();
  BraidWord word = free_reduce(w);
  std::uint64_t work = 0;
  std::size_t scan = 0;
  while (true) {
    std::size_t i = word.size();
    for (std::size_t t = scan; t + 1 < word.size(); ++t) {
      if (word[t].second() > j1 && word[t + 1].second() == j1) {
        i = t;
        break;
      }
    }
    if (i == word.size()) break;
    const Letter small = word[i + 1];
    const BraidWord piece = conjugate_letter(word[i], small, params);
    work += 1 + piece.size();
    if (work > budget) {
      throw BudgetExceeded("closed_comb_stage1: exceeded the letter budget of " +
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
    const std::size_t removed = unreduced - word.size();
    scan = i > removed + 1 ? i - removed - 1 : 0;
  }

  BraidWord prefix, rest;
  for (const Letter& l : word) {
    (l.second() == j1 ? prefix : rest).push_back(l);
  }
  return {std::move(prefix), std::move(rest)};
}

namespace {

Pi1Word to_signed_indices(const BraidWord& w) {
  Pi1Word out;
  out.reserve(w.size());
  for (const Letter& l : w) out.push_back(l.signed_first());
  return out;
}

BraidWord to_j1_letters(const Pi1Word& w, int j1) {
  BraidWord out;
  out.reserve(w.size());
  for (int s : w) out.emplace_back(s > 0 ? s : -s, j1, s > 0 ? 1 : -1);
  return out;
}

}  // namespace

ClosedDecomposition closed_comb(const BraidWord& w, const SurfaceParams& params,
                                std::uint64_t budget) {
  require_closed(params, "closed_comb");
  if (params.strands < 2) {
    throw std::invalid_argument("closed_comb needs n >= 2");
  }
  validate_word(w, params);
  const int j1 = params.first_strand_index();

  const Pi1Word gamma = pi1_normal_form(project_to_pi1(w, params), params.genus);
  BraidWord shifted = inverse(section_s(gamma, params));
  shifted.insert(shifted.end(), w.begin(), w.end());
  auto [delta, rest] = closed_comb_stage1(free_reduce(shifted), params, budget);

  // Eliminate the j_1 prefix. It projects to a trivial surface group
  // element, so it is a product of relator conjugates; each replacement
  // swaps a more-than-half relator subword for the shorter complement and
  // pushes one twist-relation kernel word to the right.
  const Pi1Word relator = pi1_relator(params.genus);
  const BraidWord kernel_rhs = tr_kernel_word(params, 1);
  Pi1Word residue = pi1_free_reduce(to_signed_indices(delta));
  std::vector<BraidWord> blocks;
  std::uint64_t work = 0;
  while (!residue.empty()) {
    const auto m = find_half_match(residue, relator);
    if (!m) {
      throw ReductionStuck(
          "closed_comb: no half-relator subword in the remaining first-strand "
          "word \"" +
          format_pi1_word(residue) + "\"");
    }
    const MatchPieces pieces = match_pieces(*m, relator);
    const Pi1Word v_inv = pi1_inverse(pieces.v);

    Pi1Word conj = pieces.x;
    conj.insert(conj.end(), v_inv.begin(), v_inv.end());
    conj.insert(conj.end(), residue.begin() + m->pos + m->len, residue.end());
    const BraidWord conj_braid = to_j1_letters(pi1_free_reduce(conj), j1);

    BraidWord block;
    const BraidWord kernel_word =
        m->inverted ? inverse(kernel_rhs) : kernel_rhs;
    for (const Letter& l : kernel_word) {
      const BraidWord moved = conjugate_word(l, conj_braid, params, budget);
      work += moved.size();
      if (work > budget) {
        throw BudgetExceeded("closed_comb: elimination exceeded the budget");
      }
      block.insert(block.end(), moved.begin(), moved.end());
    }
    blocks.push_back(std::move(block));

    Pi1Word next(residue.begin(), residue.begin() + m->pos);
    next.insert(next.end(), v_inv.begin(), v_inv.end());
    next.insert(next.end(), residue.begin() + m->pos + m->len, residue.end());
    residue = pi1_free_reduce(next);
  }

  BraidWord kernel_input;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    kernel_input.insert(kernel_input.end(), it->begin(), it->end());
  }
  kernel_input.insert(kernel_input.end(), rest.begin(), rest.end());
  kernel_input = free_reduce(kernel_input);

  ClosedDecomposition dec;
  dec.gamma = gamma;
  dec.kernel = comb_compressed(f_rewrite(kernel_input, params),
                               punctured_params(params));
  return dec;
}

nlohmann::json closed_to_json(const ClosedDecomposition& dec) {
  return {{"gamma", format_pi1_word(dec.gamma)},
          {"kernel", cnf_to_json(dec.kernel)}};
}

}  // namespace braidcomb
