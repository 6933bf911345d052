#include <doctest.h>

#include <future>
#include <random>

#include "braidcomb/combing.hpp"
#include "test_support.hpp"

using namespace braidcomb;

namespace {

const SurfaceParams kDisc4 = SurfaceParams::bounded(0, 1, 4);

BraidWord W(const char* text) { return parse_word(text); }

// w = A(1,2) A(1,4) A(1,2) A(2,3)^-1 A(2,4) A(1,3) A(1,2): the running
// seven-letter example.
const char* kExampleWord =
    "A(1,2) A(1,4) A(1,2) A(2,3)^-1 A(2,4) A(1,3) A(1,2)";

using Sym = CompressedWord::Symbol;
Sym T(std::size_t i) { return CompressedWord::terminal_symbol(i); }
Sym N(std::size_t i) { return CompressedWord::nonterminal_symbol(i); }

}  // namespace

TEST_CASE("pair encodings of the seven-letter example") {
  const BraidWord w = W(kExampleWord);

  const PairEncoding e2 = extract_factor_encoding(w, 2, kDisc4);
  CHECK(e2.conjugator.empty());
  CHECK(e2.pairs == std::vector<std::pair<int, int>>{{1, 0}, {1, 0}, {1, 0}});

  const PairEncoding e3 = extract_factor_encoding(w, 3, kDisc4);
  CHECK(e3.conjugator == W("A(1,2)"));
  CHECK(e3.pairs == std::vector<std::pair<int, int>>{{-2, 1}, {1, 1}});

  const PairEncoding e4 = extract_factor_encoding(w, 4, kDisc4);
  CHECK(e4.conjugator == W("A(1,2) A(2,3)^-1 A(1,3) A(1,2)"));
  CHECK(e4.pairs == std::vector<std::pair<int, int>>{{1, 4}, {2, 2}});

  // No strand-1 letters exist on the disc.
  const PairEncoding e1 = extract_factor_encoding(w, 1, kDisc4);
  CHECK(e1.conjugator.empty());
  CHECK(e1.pairs.empty());
}

TEST_CASE("factor program of the four-letter example") {
  const BraidWord w = W("A(1,4) A(1,3) A(2,4)^-1 A(1,2)");
  const PairEncoding enc = extract_factor_encoding(w, 4, kDisc4);
  CHECK(enc.conjugator == W("A(1,3) A(1,2)"));
  CHECK(enc.pairs == std::vector<std::pair<int, int>>{{1, 2}, {-2, 1}});

  const CompressedWord a = build_factor_slp(enc, kDisc4);

  // Terminals in signed-index order: -3,-2,-1,1,2,3 over strand 4.
  const std::vector<Letter> expected_terminals{
      Letter(3, 4, -1), Letter(2, 4, -1), Letter(1, 4, -1),
      Letter(1, 4),     Letter(2, 4),     Letter(3, 4)};
  // Rules ordered by conjugator depth then signed index, root last:
  //   0: X(-3,1) -> X(-3,0)
  //   1: X(-2,1) -> X(1,0) X(-2,0) X(-1,0)
  //   2: X(-1,1) -> X(1,0) X(2,0) X(-1,0) X(-2,0) X(-1,0)
  //   3: X(1,1)  -> X(1,0) X(2,0) X(1,0) X(-2,0) X(-1,0)
  //   4: X(3,1)  -> X(3,0)
  //   5: X(1,2)  -> X(1,1) X(3,1) X(1,1) X(-3,1) X(-1,1)
  //   6: root    -> X(1,2) X(-2,1)
  const CompressedWord expected(
      expected_terminals,
      {{T(0)},
       {T(3), T(1), T(2)},
       {T(3), T(4), T(2), T(1), T(2)},
       {T(3), T(4), T(3), T(1), T(2)},
       {T(5)},
       {N(3), N(4), N(3), N(0), N(2)},
       {N(5), N(1)}});
  CHECK(a == expected);
  CHECK(a.rule_count() == 7);

  const BraidWord printed = W(
      "A(1,4) A(2,4) A(1,4) A(2,4)^-1 A(1,4)^-1 A(3,4) A(1,4) A(2,4) A(1,4) "
      "A(2,4)^-1 A(1,4)^-1 A(3,4)^-1 A(1,4) A(2,4) A(1,4)^-1 A(2,4)^-1 "
      "A(1,4)^-1");
  CHECK(printed.size() == 17);
  // The X(1,2) part evaluates to exactly the seventeen-letter word ...
  CHECK(a.evaluate_nonterminal(5, 100) == printed);
  // ... and the root appends the X(-2,1) expansion after it.
  BraidWord full = printed;
  const BraidWord tail = W("A(1,4) A(2,4)^-1 A(1,4)^-1");
  full.insert(full.end(), tail.begin(), tail.end());
  CHECK(a.evaluate(100) == full);
  CHECK(a.eval_length() == 20);
}

TEST_CASE("empty encodings build the empty program") {
  const PairEncoding enc{3, {}, {}};
  const CompressedWord a = build_factor_slp(enc, kDisc4);
  CHECK(a.eval_length() == 0);
  CHECK(a.evaluate(10).empty());
}

TEST_CASE("comb_compressed structure") {
  // Factor 1 is empty on the disc; a single strand-k letter combs to itself.
  const CombedNormalForm single =
      comb_compressed(W("A(1,3)"), kDisc4);
  CHECK(single.factor1.empty());
  CHECK(single.factors[0].eval_length() == 0);
  CHECK(single.factors[1].evaluate(10) == W("A(1,3)"));
  CHECK(single.factors[2].eval_length() == 0);

  const CombedNormalForm ex = comb_compressed(W(kExampleWord), kDisc4);
  CHECK(ex.factor1.empty());
  CHECK(ex.factors[0].evaluate(100) == W("A(1,2) A(1,2) A(1,2)"));

  // On a surface with boundary and genus, factor 1 keeps the j_1 letters.
  const SurfaceParams g11 = SurfaceParams::bounded(1, 1, 2);
  const CombedNormalForm c =
      comb_compressed(W("A(1,3) A(1,4) A(2,3) A(2,3)^-1"), g11);
  CHECK(c.factor1 == W("A(1,3)"));
  CHECK(c.factors.size() == 1);
}

TEST_CASE("comb_classical on the stress family") {
  const BraidWord b1 = beta_word(1);
  CHECK(b1.size() == 5);
  CHECK(beta_word(2).size() == 9);

  const auto factors = comb_classical(b1, kDisc4, 1 << 20);
  CHECK(factors[0].empty());
  CHECK(free_reduce(factors[1]).empty());
  CHECK(free_reduce(factors[2]).empty());
  CHECK(factors[3] == W("A(2,4) A(3,4) A(2,4)^-1"));

  // Budget small enough to trip.
  CHECK_THROWS_AS(comb_classical(beta_word(6), kDisc4, 10), BudgetExceeded);
}

TEST_CASE("comb_classical leaves combed words alone") {
  const BraidWord w = W("A(1,2) A(1,3) A(2,3) A(1,4)");
  const auto factors = comb_classical(w, kDisc4, 1 << 20);
  CHECK(factors[1] == W("A(1,2)"));
  CHECK(factors[2] == W("A(1,3) A(2,3)"));
  CHECK(factors[3] == W("A(1,4)"));
}

TEST_CASE("conjugation by a commuting word is invisible after combing") {
  // g^-1 (A(1,4) A(2,4) A(3,4)) g with g = A(1,2)^-1 A(2,3).
  const BraidWord g = W("A(1,2)^-1 A(2,3)");
  BraidWord w = inverse(g);
  const BraidWord mid = W("A(1,4) A(2,4) A(3,4)");
  w.insert(w.end(), mid.begin(), mid.end());
  w.insert(w.end(), g.begin(), g.end());
  const auto factors = comb_classical(w, kDisc4, 1 << 22);
  CHECK(factors[3] == W("A(1,4) A(2,4) A(3,4)"));
}

TEST_CASE("compressed factors match the classical oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int g = int(rng() % 2);
    const int p = 1 + int(rng() % 2);
    const int n = 2 + int(rng() % 3);
    const SurfaceParams params = SurfaceParams::bounded(g, p, n);
    const BraidWord w = test::random_word(params, rng() % 13, rng);
    const auto classical = comb_classical(w, params, 1 << 24);
    const CombedNormalForm cnf = comb_compressed(w, params);
    CHECK(cnf.factor1 == free_reduce(classical[0]));
    for (int k = 2; k <= n; ++k) {
      const CompressedWord& factor = cnf.factors[k - 2];
      const CompressedWord oracle =
          CompressedWord::from_word(classical[k - 1]);
      CHECK(free_group_eq(factor, oracle));
      // Letter-for-letter after guarded reduction.
      CHECK(reduce(factor, 1 << 22).evaluate(1 << 22) ==
            free_reduce(classical[k - 1]));
    }
  }
}

TEST_CASE("words_equal basics") {
  const BraidWord w = W(kExampleWord);
  BraidWord padded = w;
  padded.push_back(Letter(1, 2));
  padded.push_back(Letter(1, 2, -1));
  CHECK(words_equal(w, padded, kDisc4));
  CHECK(words_equal(W("A(1,2) A(3,4)"), W("A(3,4) A(1,2)"), kDisc4));
  CHECK_FALSE(words_equal(W("A(1,2)"), W("A(1,3)"), kDisc4));
}

TEST_CASE("words_equal agrees with the classical oracle") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + int(rng() % 3);
    const SurfaceParams params = SurfaceParams::bounded(0, 1, n);
    const BraidWord w1 = test::random_word(params, rng() % 11, rng);
    const BraidWord w2 = test::random_word(params, rng() % 11, rng);
    const auto c1 = comb_classical(w1, params, 1 << 24);
    const auto c2 = comb_classical(w2, params, 1 << 24);
    bool oracle = true;
    for (int k = 1; k <= n; ++k) {
      oracle = oracle && free_reduce(c1[k - 1]) == free_reduce(c2[k - 1]);
    }
    CHECK(words_equal(w1, w2, params) == oracle);
  }
}

TEST_CASE("words_equal respects multiplication") {
  std::mt19937_64 rng(34);
  const SurfaceParams params = SurfaceParams::bounded(1, 1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    BraidWord u = test::random_word(params, 1 + rng() % 8, rng);
    BraidWord v = test::random_word(params, 1 + rng() % 8, rng);
    // u' and v' differ from u and v by free insertions.
    BraidWord u2 = u;
    const Letter x = test::random_letter(params, rng);
    u2.push_back(x);
    u2.push_back(x.inverse());
    BraidWord v2 = v;
    v2.insert(v2.begin(), x);
    v2.insert(v2.begin() + 1, x.inverse());
    REQUIRE(words_equal(u, u2, params));
    REQUIRE(words_equal(v, v2, params));
    BraidWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    BraidWord u2v2 = u2;
    u2v2.insert(u2v2.end(), v2.begin(), v2.end());
    CHECK(words_equal(uv, u2v2, params));
  }
}

TEST_CASE("defining relations hold under words_equal") {
  std::mt19937_64 rng(35);
  int instances = 0;
  for (int g = 0; g <= 2; ++g) {
    for (int p = 1; p <= 2; ++p) {
      const SurfaceParams params = SurfaceParams::bounded(g, p, 3);
      const auto gens = generator_letters(params);
      for (const Letter& pa : gens) {
        for (const Letter& pu : gens) {
          if (pa.second() >= pu.second()) continue;
          if (rng() % 4 != 0) continue;  // sample; the acceptance suite is exhaustive
          const Letter a(pa.first(), pa.second(), rng() & 1 ? 1 : -1);
          const Letter u(pu.first(), pu.second(), rng() & 1 ? 1 : -1);
          BraidWord lhs{a.inverse(), u, a};
          CHECK(words_equal(lhs, conjugate_letter(u, a, params), params));
          ++instances;
        }
      }
    }
  }
  CHECK(instances > 20);
}

TEST_CASE("beta family blows up exponentially") {
  EvalLength bound = 2;
  for (int m = 1; m <= 5; ++m) {
    const BraidWord w = beta_word(m);
    CHECK(w.size() == 4 * static_cast<std::size_t>(m) + 1);
    const auto factors = comb_classical(w, kDisc4, 1 << 26);
    const std::size_t len = free_reduce(factors[3]).size();
    CHECK(EvalLength(len) >= bound);
    // The compressed factor agrees with the oracle.
    const CombedNormalForm cnf = comb_compressed(w, kDisc4);
    CHECK(reduce(cnf.factors[2], 1 << 26).evaluate(1 << 26) ==
          free_reduce(factors[3]));
    bound *= 3;
  }
}

TEST_CASE("size bound and encoding cost") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const int g = int(rng() % 3);
    const int p = 1 + int(rng() % 2);
    const int n = 2 + int(rng() % 5);
    const SurfaceParams params = SurfaceParams::bounded(g, p, n);
    const std::size_t m = 1 + rng() % 500;
    const BraidWord w = test::random_word(params, m, rng);
    std::size_t description = 0;
    for (int k = 1; k <= n; ++k) {
      const PairEncoding enc = extract_factor_encoding(w, k, params);
      CHECK(enc.conjugator.size() + 2 * enc.pairs.size() <= 3 * m);
      for (const auto& [c, d] : enc.pairs) {
        CHECK(std::size_t(d) <= enc.conjugator.size());
        CHECK(std::abs(c) < params.strand_index(k));
        description += 1 + 2 * std::size_t(d);
      }
      if (k >= 2) {
        const CompressedWord a = build_factor_slp(enc, params);
        CHECK(a.size() <=
              19 * std::size_t(2 * g + p + n) * std::max<std::size_t>(m, 1));
      }
    }
    CHECK(description <= m * m);
  }
}

TEST_CASE("concurrent use needs no coordination") {
  // Shared immutable inputs, pure functions: parallel calls must agree
  // with the serial results.
  std::mt19937_64 rng(39);
  const SurfaceParams params = SurfaceParams::bounded(1, 2, 4);
  const BraidWord w1 = test::random_word(params, 200, rng);
  BraidWord w2 = w1;
  const Letter x = test::random_letter(params, rng);
  w2.insert(w2.begin() + 50, x.inverse());
  w2.insert(w2.begin() + 50, x);
  const bool serial_eq = words_equal(w1, w2, params);
  const CombedNormalForm serial_cnf = comb_compressed(w1, params);

  std::vector<std::future<bool>> jobs;
  for (int t = 0; t < 8; ++t) {
    jobs.push_back(std::async(std::launch::async, [&] {
      const CombedNormalForm cnf = comb_compressed(w1, params);
      bool same = cnf.factor1 == serial_cnf.factor1;
      for (std::size_t k = 0; k < cnf.factors.size(); ++k) {
        same = same && cnf.factors[k] == serial_cnf.factors[k];
      }
      return same && words_equal(w1, w2, params) == serial_eq;
    }));
  }
  for (auto& job : jobs) CHECK(job.get());
}

TEST_CASE("word problem at scale") {
  // A 2000-letter word against a rewritten copy: equality must be decided
  // without ever expanding the factors, whose evaluation lengths here run
  // to thousands of digits.
  std::mt19937_64 rng(37);
  const SurfaceParams params = SurfaceParams::bounded(1, 1, 4);
  const auto gens = generator_letters(params);
  const BraidWord w = test::random_word(params, 2000, rng);

  BraidWord rewritten = w;
  for (int edit = 0; edit < 50; ++edit) {
    // Splice in L^-1 R for a random conjugation relation, or a cancelling
    // pair; both leave the braid unchanged.
    const std::size_t cut = rng() % (rewritten.size() + 1);
    BraidWord insert;
    if (rng() & 1) {
      Letter a = gens[rng() % gens.size()];
      Letter u = gens[rng() % gens.size()];
      if (a.second() == u.second()) continue;
      if (a.second() > u.second()) std::swap(a, u);
      if (rng() & 1) a = a.inverse();
      if (rng() & 1) u = u.inverse();
      insert = inverse(BraidWord{a.inverse(), u, a});
      const BraidWord rhs = conjugate_letter(u, a, params);
      insert.insert(insert.end(), rhs.begin(), rhs.end());
    } else {
      const Letter x = test::random_letter(params, rng);
      insert = {x, x.inverse()};
    }
    rewritten.insert(rewritten.begin() + cut, insert.begin(), insert.end());
  }
  CHECK(words_equal(w, rewritten, params));

  // One extra letter breaks equality.
  BraidWord off = rewritten;
  off.insert(off.begin() + rng() % off.size(), test::random_letter(params, rng));
  CHECK_FALSE(words_equal(w, off, params));

  // The factors would be astronomically long if expanded.
  const CombedNormalForm cnf = comb_compressed(rewritten, params);
  bool some_enormous = false;
  for (const CompressedWord& f : cnf.factors) {
    if (f.eval_length() > EvalLength(1) << 256) some_enormous = true;
  }
  CHECK(some_enormous);
}

TEST_CASE("combed normal form serializes") {
  const CombedNormalForm cnf = comb_compressed(W(kExampleWord), kDisc4);
  const nlohmann::json j = cnf_to_json(cnf);
  CHECK(j.at("params").at("n") == 4);
  CHECK(j.at("factor1") == "");
  CHECK(j.at("factors").size() == 3);
  CHECK(j.at("eval_lengths")[0] == "3");
  // Factors parse back to the same programs.
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(slp_from_json(j.at("factors")[t]) == cnf.factors[t]);
  }
}
