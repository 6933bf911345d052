#include "braidcomb/cli.hpp"

#include <cstdlib>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "braidcomb/closed.hpp"
#include "braidcomb/combing.hpp"

namespace braidcomb {
namespace {

std::string fib_display(const BraidWord& w) {
  // The demo family has two terminals; show them as 'a' and 'b'.
  std::string s;
  for (const Letter& l : w) {
    s += l == Letter(1, 2) ? 'a' : 'b';
  }
  return s;
}

int cmd_comb(const std::string& word_text, const RunConfig& cfg,
             std::ostream& out) {
  const BraidWord w = parse_word(word_text);
  const CombedNormalForm cnf = comb_compressed(w, cfg.params);

  nlohmann::json j = cnf_to_json(cnf);
  std::vector<std::string> evals, reduced;
  if (cfg.show_eval) {
    for (const CompressedWord& f : cnf.factors) {
      if (f.eval_length() <= cfg.exact_threshold) {
        const BraidWord ev = f.evaluate(cfg.exact_threshold);
        evals.push_back(format_word(ev));
        reduced.push_back(format_word(free_reduce(ev)));
      } else {
        evals.push_back("");
        reduced.push_back("");
      }
    }
    j["evals"] = evals;
    j["reduced"] = reduced;
  }

  if (cfg.json) {
    out << j.dump() << "\n";
    return 0;
  }
  out << "params: g=" << cfg.params.genus << " p=" << cfg.params.boundaries
      << " n=" << cfg.params.strands << " bounded\n";
  out << "factor 1: \"" << format_word(cnf.factor1) << "\"\n";
  for (std::size_t t = 0; t < cnf.factors.size(); ++t) {
    const CompressedWord& f = cnf.factors[t];
    out << "factor " << t + 2 << ": size=" << f.size()
        << " eval_length=" << f.eval_length().str() << "\n";
    if (cfg.show_eval && !evals[t].empty()) {
      out << "  ev: \"" << evals[t] << "\"\n";
      out << "  reduced: \"" << reduced[t] << "\"\n";
    }
  }
  return 0;
}

int eq_verdict(const BraidWord& w1, const BraidWord& w2, const RunConfig& cfg,
               std::ostream& out) {
  auto comb1 = std::async(std::launch::async, [&] {
    return comb_compressed(w1, cfg.params);
  });
  const CombedNormalForm c2 = comb_compressed(w2, cfg.params);
  const CombedNormalForm c1 = comb1.get();

  const bool factor1_equal = c1.factor1 == c2.factor1;
  std::vector<bool> factors_equal;
  bool equal = factor1_equal;
  for (std::size_t t = 0; t < c1.factors.size(); ++t) {
    const bool e = free_group_eq(c1.factors[t], c2.factors[t],
                                 cfg.eq_options());
    factors_equal.push_back(e);
    equal = equal && e;
  }
  if (cfg.json) {
    nlohmann::json j{{"equal", equal}, {"factor1_equal", factor1_equal}};
    j["factors_equal"] = factors_equal;
    out << j.dump() << "\n";
  } else {
    out << (equal ? "equal" : "unequal") << "\n";
  }
  return equal ? 0 : 1;
}

int cmd_eq(std::vector<std::string> words, const RunConfig& cfg,
           std::istream& in, std::ostream& out) {
  if (words.empty()) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) words.push_back(line);
    }
  }
  if (words.size() < 2 || words.size() % 2 != 0) {
    throw std::invalid_argument("eq needs an even number of words (two per "
                                "comparison), from arguments or stdin lines");
  }
  int rc = 0;
  for (std::size_t t = 0; t + 1 < words.size(); t += 2) {
    rc = std::max(rc, eq_verdict(parse_word(words[t]), parse_word(words[t + 1]),
                                 cfg, out));
  }
  return rc;
}

int cmd_demo_fib(int n, const RunConfig& cfg, std::ostream& out) {
  const CompressedWord fib = fibonacci_slp(n);
  const EvalLength len = fib.eval_length();
  nlohmann::json j{{"family", "fib"},
                   {"n", n},
                   {"size", fib.size()},
                   {"length", len.str()}};
  std::string word;
  if (len <= 64) {
    word = fib_display(fib.evaluate(64));
    j["word"] = word;
  }
  if (cfg.json) {
    out << j.dump() << "\n";
  } else {
    out << "fib n=" << n << " size=" << fib.size() << " length=" << len.str();
    if (!word.empty()) out << " word=" << word;
    out << "\n";
  }
  return 0;
}

int cmd_demo_beta(int m, const RunConfig& cfg, std::ostream& out) {
  const BraidWord w = beta_word(m);
  const SurfaceParams disc = SurfaceParams::bounded(0, 1, 4);
  const CombedNormalForm cnf = comb_compressed(w, disc);

  nlohmann::json j{{"family", "beta"}, {"m", m}, {"input_length", w.size()}};
  nlohmann::json sizes = nlohmann::json::array();
  for (const CompressedWord& f : cnf.factors) sizes.push_back(f.size());
  j["sizes"] = sizes;
  j["eval_length_4"] = cnf.factors.back().eval_length().str();
  EvalLength bound = 2;
  for (int t = 1; t < m; ++t) bound *= 3;
  j["lower_bound"] = bound.str();

  // The compressed side always completes; the classical reduction is the
  // exponential part and may run out of budget.
  int rc = 0;
  std::string classical_error;
  try {
    const auto factors = comb_classical(w, disc, cfg.budget);
    const std::size_t reduced_len = free_reduce(factors[3]).size();
    j["reduced_factor4_length"] = reduced_len;
    j["bound_holds"] = EvalLength(reduced_len) >= bound;
    if (EvalLength(reduced_len) < bound) rc = 1;
  } catch (const BudgetExceeded& e) {
    classical_error = e.what();
    j["error"] = classical_error;
    rc = 2;
  }

  if (cfg.json) {
    out << j.dump() << "\n";
  } else {
    out << "beta m=" << m << " input_length=" << w.size() << " sizes=[";
    for (std::size_t t = 0; t < cnf.factors.size(); ++t) {
      if (t) out << ",";
      out << cnf.factors[t].size();
    }
    out << "] eval_length_4=" << cnf.factors.back().eval_length().str()
        << " lower_bound=" << bound.str();
    if (classical_error.empty()) {
      out << " reduced_factor4_length=" << j["reduced_factor4_length"]
          << " bound_holds=" << (j["bound_holds"] == true ? "yes" : "no");
    } else {
      out << " error=\"" << classical_error << "\"";
    }
    out << "\n";
  }
  return rc;
}

int cmd_closed(const std::string& sub, const std::string& arg,
               const RunConfig& cfg, std::ostream& out) {
  const SurfaceParams params = cfg.params;
  if (sub == "section") {
    const Pi1Word gamma = parse_pi1_word(arg);
    out << format_word(section_s(gamma, params)) << "\n";
    return 0;
  }
  if (sub == "project") {
    const BraidWord w = parse_word(arg);
    out << format_pi1_word(project_to_pi1(w, params)) << "\n";
    return 0;
  }
  if (sub == "comb") {
    const BraidWord w = parse_word(arg);
    const ClosedDecomposition dec = closed_comb(w, params, cfg.budget);
    if (cfg.json) {
      out << closed_to_json(dec).dump() << "\n";
    } else {
      out << "gamma: \"" << format_pi1_word(dec.gamma) << "\"\n";
      out << "kernel factor 1: \"" << format_word(dec.kernel.factor1)
          << "\"\n";
      for (std::size_t t = 0; t < dec.kernel.factors.size(); ++t) {
        out << "kernel factor " << t + 2
            << ": size=" << dec.kernel.factors[t].size()
            << " eval_length=" << dec.kernel.factors[t].eval_length().str()
            << "\n";
      }
    }
    return 0;
  }
  throw std::invalid_argument("unknown closed subcommand: " + sub);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Combs surface braid words into compressed normal forms and "
               "decides braid equality"};
  app.fallthrough();

  int g = 0, p = 1, n = 2;
  bool closed = false;
  RunConfig cfg;
  app.add_option("--g", g, "surface genus");
  app.add_option("--p", p, "boundary components (bounded surfaces)");
  app.add_option("--n", n, "number of strands");
  app.add_flag("--closed", closed, "closed surface (ignores --p)");
  app.add_option("--lambda", cfg.lambda,
                 "error exponent for randomized comparisons");
  app.add_option("--exact-threshold", cfg.exact_threshold,
                 "decompress-and-compare below this evaluation length");
  app.add_option("--budget", cfg.budget,
                 "letter budget for the exponential paths");
  std::uint64_t seed = 0;
  const bool have_env_seed = std::getenv("BRAIDCOMB_SEED") != nullptr;
  if (have_env_seed) seed = std::strtoull(std::getenv("BRAIDCOMB_SEED"), nullptr, 10);
  auto* seed_opt = app.add_option("--seed", seed, "fingerprint seed");
  app.add_flag("--json", cfg.json, "machine readable output");
  app.add_flag("--show-eval", cfg.show_eval,
               "print decompressed factors when under the exact threshold");

  std::string comb_word;
  auto* comb = app.add_subcommand("comb", "comb one word");
  comb->add_option("word", comb_word, "braid word")->required();

  std::vector<std::string> eq_words;
  auto* eq = app.add_subcommand("eq", "decide equality of word pairs");
  eq->add_option("words", eq_words, "two words (or none: read stdin lines)");

  std::string family;
  int parameter = 1;
  auto* demo = app.add_subcommand("demo", "built-in families");
  demo->add_option("family", family, "fib or beta")->required();
  demo->add_option("parameter", parameter, "family index")->required();

  std::string closed_sub, closed_arg;
  auto* closedcmd = app.add_subcommand("closed", "closed-surface operations");
  closedcmd->add_option("sub", closed_sub, "section, project or comb")
      ->required();
  closedcmd->add_option("arg", closed_arg, "word argument")->required();

  app.require_subcommand(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print through CLI11's own stream handling.
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (seed_opt->count() > 0 || have_env_seed) cfg.seed = seed;
    cfg.params = (closed || closedcmd->parsed())
                     ? SurfaceParams::closed_surface(g, n)
                     : SurfaceParams::bounded(g, p, n);
    if (comb->parsed()) return cmd_comb(comb_word, cfg, out);
    if (eq->parsed()) return cmd_eq(eq_words, cfg, std::cin, out);
    if (demo->parsed()) {
      if (family == "fib") return cmd_demo_fib(parameter, cfg, out);
      if (family == "beta") return cmd_demo_beta(parameter, cfg, out);
      throw std::invalid_argument("unknown demo family: " + family);
    }
    if (closedcmd->parsed()) return cmd_closed(closed_sub, closed_arg, cfg, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace braidcomb
