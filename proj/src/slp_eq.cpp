#include "braidcomb/slp_eq.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <vector>

// Randomized equality of straight-line programs.
//
// monoid_eq fingerprints ev(·) with a polynomial rolling hash evaluated
// bottom-up: for a concatenation, fp(uv) = fp(u) + x^|u|·fp(v), and x^|u| is
// itself maintained multiplicatively, so enormous evaluation lengths never
// need to be materialized. Distinct words of equal length L collide at one
// prime with probability < L / 2^61, so each prime buys 61 - log2(L) error
// bits while L stays below 2^61 (far beyond the exact threshold).
//
// free_group_trivial maps generator r to the integer matrix
// [[1,-2r],[0,1]]·[[1,0],[2,1]]·[[1,2r],[0,1]]; these matrices generate a
// free group, so ev(a) is freely trivial iff the product is the identity
// over the integers. The product is taken modulo random primes; a nonzero
// off-identity entry of magnitude at most 2^(c·L) vanishes modulo at most
// c·L/61 of the ~2^55 candidate primes.
//
// Both routines stack enough primes for the requested error exponent and
// cap the count at 16; past desk scale the stated bound degrades gracefully
// into a heuristic.

namespace braidcomb {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin for all 64-bit inputs with this base set.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> sample_primes(u64 seed, int count) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<u64> dist(1ULL << 61, (1ULL << 62) - 1);
  std::vector<u64> primes;
  while (static_cast<int>(primes.size()) < count) {
    u64 candidate = dist(rng) | 1;
    if (is_prime(candidate) &&
        std::find(primes.begin(), primes.end(), candidate) == primes.end()) {
      primes.push_back(candidate);
    }
  }
  return primes;
}

int bit_length(const EvalLength& n) {
  return n.is_zero() ? 0
                     : static_cast<int>(boost::multiprecision::msb(n)) + 1;
}

int prime_count(int lambda, int per_prime_bits) {
  const int bits = std::max(per_prime_bits, 1);
  const int kappa = (lambda + bits - 1) / bits;
  return std::clamp(kappa, 2, 16);
}

// Canonical letter codes shared by both operands of monoid_eq.
std::vector<Letter> combined_alphabet(const CompressedWord& a,
                                      const CompressedWord& b) {
  std::vector<Letter> all = a.terminals();
  all.insert(all.end(), b.terminals().begin(), b.terminals().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<u64> letter_codes(const CompressedWord& a,
                              const std::vector<Letter>& alphabet) {
  std::vector<u64> codes(a.terminals().size());
  for (std::size_t t = 0; t < a.terminals().size(); ++t) {
    const auto it = std::lower_bound(alphabet.begin(), alphabet.end(),
                                     a.terminals()[t]);
    codes[t] = static_cast<u64>(it - alphabet.begin()) + 1;
  }
  return codes;
}

u64 rolling_fingerprint(const CompressedWord& a, const std::vector<u64>& codes,
                        u64 prime, u64 base) {
  struct Node {
    u64 fp;    // hash of ev(rule)
    u64 xpow;  // base^|ev(rule)| mod prime
  };
  std::vector<Node> memo(a.rule_count());
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    u64 fp = 0, xpow = 1;
    for (CompressedWord::Symbol s : a.rule(i)) {
      if (CompressedWord::symbol_is_terminal(s)) {
        fp = (fp + mulmod(codes[CompressedWord::symbol_index(s)], xpow,
                          prime)) %
             prime;
        xpow = mulmod(xpow, base, prime);
      } else {
        const Node& child = memo[CompressedWord::symbol_index(s)];
        fp = (fp + mulmod(child.fp, xpow, prime)) % prime;
        xpow = mulmod(xpow, child.xpow, prime);
      }
    }
    memo[i] = {fp, xpow};
  }
  return memo[a.root()].fp;
}

struct Mat2 {
  u64 a, b, c, d;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, u64 m) {
  return {static_cast<u64>((u128(x.a) * y.a + u128(x.b) * y.c) % m),
          static_cast<u64>((u128(x.a) * y.b + u128(x.b) * y.d) % m),
          static_cast<u64>((u128(x.c) * y.a + u128(x.d) * y.c) % m),
          static_cast<u64>((u128(x.c) * y.b + u128(x.d) * y.d) % m)};
}

u64 neg_mod(u64 value, u64 m) { return (m - value % m) % m; }

// Generator index r (0-based) embeds as [[1-4r, -8r^2],[2, 1+4r]]; its
// inverse is [[1+4r, 8r^2],[-2, 1-4r]].
Mat2 generator_matrix(u64 r, int sign, u64 m) {
  const u64 four_r = (4 * r) % m;
  const u64 eight_r2 = mulmod((8 * r) % m, r % m, m);
  if (sign > 0) {
    return {(1 + neg_mod(four_r, m)) % m, neg_mod(eight_r2, m), 2 % m,
            (1 + four_r) % m};
  }
  return {(1 + four_r) % m, eight_r2, neg_mod(2, m),
          (1 + neg_mod(four_r, m)) % m};
}

bool matrix_product_is_identity(const CompressedWord& a, u64 prime) {
  // Map each terminal to a free-group generator index by its (i,j) pair.
  std::vector<std::pair<int, int>> gens;
  for (const Letter& l : a.terminals()) gens.emplace_back(l.first(), l.second());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<Mat2> letter_mat(a.terminals().size());
  for (std::size_t t = 0; t < a.terminals().size(); ++t) {
    const Letter& l = a.terminals()[t];
    const auto it = std::lower_bound(gens.begin(), gens.end(),
                                     std::make_pair(l.first(), l.second()));
    letter_mat[t] = generator_matrix(static_cast<u64>(it - gens.begin()),
                                     l.sign(), prime);
  }

  const Mat2 identity{1, 0, 0, 1};
  std::vector<Mat2> memo(a.rule_count());
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    Mat2 acc = identity;
    for (CompressedWord::Symbol s : a.rule(i)) {
      const Mat2& m = CompressedWord::symbol_is_terminal(s)
                          ? letter_mat[CompressedWord::symbol_index(s)]
                          : memo[CompressedWord::symbol_index(s)];
      acc = mat_mul(acc, m, prime);
    }
    memo[i] = acc;
  }
  const Mat2& root = memo[a.root()];
  return root.a == 1 && root.b == 0 && root.c == 0 && root.d == 1;
}

}  // namespace

bool monoid_eq(const CompressedWord& a, const CompressedWord& b,
               const EqOptions& opts) {
  const EvalLength la = a.eval_length();
  const EvalLength lb = b.eval_length();
  if (la != lb) return false;
  if (la <= opts.exact_threshold) {
    return a.evaluate(opts.exact_threshold) == b.evaluate(opts.exact_threshold);
  }

  const auto alphabet = combined_alphabet(a, b);
  const auto codes_a = letter_codes(a, alphabet);
  const auto codes_b = letter_codes(b, alphabet);
  const int kappa = prime_count(opts.lambda, 61 - bit_length(la));
  const auto primes = sample_primes(opts.seed, kappa);
  std::mt19937_64 rng(opts.seed ^ 0xda3e39cb94b95bdbULL);
  for (u64 prime : primes) {
    const u64 base = rng() % (prime - 3) + 2;
    if (rolling_fingerprint(a, codes_a, prime, base) !=
        rolling_fingerprint(b, codes_b, prime, base)) {
      return false;
    }
  }
  return true;
}

bool free_group_trivial(const CompressedWord& a, const EqOptions& opts) {
  const EvalLength len = a.eval_length();
  if (len <= opts.exact_threshold) {
    return free_reduce(a.evaluate(opts.exact_threshold)).empty();
  }
  // A product of L generator matrices has entries below 2^(36·L); at most
  // (36·L)/61 primes in the sampled range divide a fixed nonzero entry,
  // out of roughly 2^55 candidates.
  const int divisor_bits = bit_length(EvalLength(len * 36 / 61));
  const int kappa = prime_count(opts.lambda, 55 - divisor_bits);
  for (u64 prime : sample_primes(opts.seed, kappa)) {
    if (!matrix_product_is_identity(a, prime)) return false;
  }
  return true;
}

bool free_group_eq(const CompressedWord& a, const CompressedWord& b,
                   const EqOptions& opts) {
  return free_group_trivial(concat(a, invert(b)), opts);
}

}  // namespace braidcomb
