#include "braidcomb/slp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace braidcomb {

CompressedWord::CompressedWord() : rule_ends_{0} {}

CompressedWord::CompressedWord(std::vector<Letter> terminals,
                               const std::vector<std::vector<Symbol>>& rules)
    : terminals_(std::move(terminals)) {
  symbols_.reserve([&] {
    std::size_t total = 0;
    for (const auto& r : rules) total += r.size();
    return total;
  }());
  rule_ends_.reserve(rules.size());
  for (const auto& r : rules) {
    symbols_.insert(symbols_.end(), r.begin(), r.end());
    rule_ends_.push_back(static_cast<std::uint32_t>(symbols_.size()));
  }
  normalize_and_check();
}

CompressedWord::CompressedWord(std::vector<Letter> terminals,
                               std::vector<Symbol> symbols,
                               std::vector<std::uint32_t> rule_ends)
    : terminals_(std::move(terminals)),
      symbols_(std::move(symbols)),
      rule_ends_(std::move(rule_ends)) {
  normalize_and_check();
}

std::span<const CompressedWord::Symbol> CompressedWord::rule(
    std::size_t i) const {
  const std::uint32_t begin = i == 0 ? 0 : rule_ends_[i - 1];
  return {symbols_.data() + begin, symbols_.data() + rule_ends_[i]};
}

void CompressedWord::normalize_and_check() {
  if (rule_ends_.empty()) {
    throw std::invalid_argument("compressed word needs at least a root rule");
  }
  if (rule_ends_.back() != symbols_.size() ||
      !std::is_sorted(rule_ends_.begin(), rule_ends_.end())) {
    throw std::invalid_argument("malformed rule offsets");
  }
  const std::size_t q = rule_ends_.size();
  for (std::size_t i = 0; i < q; ++i) {
    for (Symbol s : rule(i)) {
      if (s == 0) throw std::invalid_argument("zero symbol");
      if (symbol_is_terminal(s)) {
        if (symbol_index(s) >= terminals_.size())
          throw std::invalid_argument("terminal index out of range");
      } else if (symbol_index(s) >= i) {
        throw std::invalid_argument(
            "production of rule " + std::to_string(i) +
            " references rule " + std::to_string(symbol_index(s)) +
            "; ranked programs may only reference smaller rules");
      }
    }
  }

  // Prune non-root empty productions, cascading until stable.
  std::vector<char> dead(q, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Symbol> packed;
    packed.reserve(symbols_.size());
    std::vector<std::uint32_t> ends;
    ends.reserve(q);
    for (std::size_t i = 0; i < q; ++i) {
      if (!dead[i]) {
        for (Symbol s : rule(i)) {
          if (!symbol_is_terminal(s) && dead[symbol_index(s)]) continue;
          packed.push_back(s);
        }
      }
      ends.push_back(static_cast<std::uint32_t>(packed.size()));
      const std::uint32_t begin = i == 0 ? 0 : ends[i - 1];
      if (!dead[i] && i + 1 < q && ends[i] == begin) {
        dead[i] = 1;
        changed = true;
      }
    }
    symbols_ = std::move(packed);
    rule_ends_ = std::move(ends);
  }
  if (std::any_of(dead.begin(), dead.end(), [](char d) { return d != 0; })) {
    // Drop the dead rules and remap indices.
    std::vector<std::size_t> remap(q);
    std::size_t next = 0;
    for (std::size_t i = 0; i < q; ++i) {
      remap[i] = next;
      if (!dead[i]) ++next;
    }
    std::vector<Symbol> packed;
    packed.reserve(symbols_.size());
    std::vector<std::uint32_t> ends;
    ends.reserve(next);
    for (std::size_t i = 0; i < q; ++i) {
      if (dead[i]) continue;
      for (Symbol s : rule(i)) {
        packed.push_back(symbol_is_terminal(s)
                             ? s
                             : nonterminal_symbol(remap[symbol_index(s)]));
      }
      ends.push_back(static_cast<std::uint32_t>(packed.size()));
    }
    symbols_ = std::move(packed);
    rule_ends_ = std::move(ends);
  }

  // Drop terminals that no production mentions.
  std::vector<char> used(terminals_.size(), 0);
  for (Symbol s : symbols_) {
    if (symbol_is_terminal(s)) used[symbol_index(s)] = 1;
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    std::vector<std::size_t> remap(terminals_.size());
    std::vector<Letter> kept;
    for (std::size_t t = 0; t < terminals_.size(); ++t) {
      remap[t] = kept.size();
      if (used[t]) kept.push_back(terminals_[t]);
    }
    terminals_ = std::move(kept);
    for (Symbol& s : symbols_) {
      if (symbol_is_terminal(s)) s = terminal_symbol(remap[symbol_index(s)]);
    }
  }
}

EvalLength CompressedWord::eval_length() const { return eval_length_of(root()); }

EvalLength CompressedWord::eval_length_of(std::size_t nonterminal) const {
  std::vector<EvalLength> len(nonterminal + 1);
  for (std::size_t i = 0; i <= nonterminal; ++i) {
    EvalLength total = 0;
    for (Symbol s : rule(i)) {
      if (symbol_is_terminal(s)) {
        ++total;
      } else {
        total += len[symbol_index(s)];
      }
    }
    len[i] = std::move(total);
  }
  return len[nonterminal];
}

namespace {

// Saturating per-rule lengths; anything above `cap` is pinned to cap+1.
std::vector<std::uint64_t> saturated_lengths(const CompressedWord& a,
                                             std::uint64_t cap) {
  std::vector<std::uint64_t> len(a.rule_count());
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    std::uint64_t total = 0;
    for (CompressedWord::Symbol s : a.rule(i)) {
      const std::uint64_t add = CompressedWord::symbol_is_terminal(s)
                                    ? 1
                                    : len[CompressedWord::symbol_index(s)];
      total = (total > cap || add > cap || total + add > cap) ? cap + 1
                                                              : total + add;
    }
    len[i] = total;
  }
  return len;
}

}  // namespace

BraidWord CompressedWord::evaluate_nonterminal(std::size_t nonterminal,
                                               std::uint64_t max_len) const {
  const auto len = saturated_lengths(*this, max_len);
  if (len[nonterminal] > max_len) {
    throw TooLong(eval_length_of(nonterminal).str());
  }

  // Skip over chains of single-symbol rules so expansion work stays linear
  // in the output length.
  std::vector<Symbol> resolved(rule_count());
  for (std::size_t i = 0; i < rule_count(); ++i) {
    const auto r = rule(i);
    if (r.size() == 1) {
      resolved[i] =
          symbol_is_terminal(r[0]) ? r[0] : resolved[symbol_index(r[0])];
    } else {
      resolved[i] = nonterminal_symbol(i);
    }
  }

  BraidWord out;
  out.reserve(static_cast<std::size_t>(len[nonterminal]));
  std::vector<Symbol> stack;
  {
    Symbol start = resolved[nonterminal];
    stack.push_back(start);
  }
  while (!stack.empty()) {
    const Symbol s = stack.back();
    stack.pop_back();
    if (symbol_is_terminal(s)) {
      out.push_back(terminals_[symbol_index(s)]);
    } else {
      const auto r = rule(symbol_index(s));
      for (std::size_t t = r.size(); t-- > 0;) {
        stack.push_back(symbol_is_terminal(r[t]) ? r[t]
                                                 : resolved[symbol_index(r[t])]);
      }
    }
  }
  return out;
}

BraidWord CompressedWord::evaluate(std::uint64_t max_len) const {
  return evaluate_nonterminal(root(), max_len);
}

CompressedWord CompressedWord::from_word(const BraidWord& w) {
  if (w.empty()) return CompressedWord();
  std::vector<Letter> terminals;
  std::vector<Symbol> root_rule;
  root_rule.reserve(w.size());
  for (const Letter& l : w) {
    const auto it = std::find(terminals.begin(), terminals.end(), l);
    std::size_t idx;
    if (it == terminals.end()) {
      idx = terminals.size();
      terminals.push_back(l);
    } else {
      idx = static_cast<std::size_t>(it - terminals.begin());
    }
    root_rule.push_back(terminal_symbol(idx));
  }
  return CompressedWord(std::move(terminals), std::move(root_rule),
                        {static_cast<std::uint32_t>(w.size())});
}

namespace {

// True when every terminal of a nonempty alphabet moves the same strand.
bool uniform_strand(const std::vector<Letter>& alphabet, int& second) {
  if (alphabet.empty()) return false;
  second = alphabet.front().second();
  for (const Letter& l : alphabet) {
    if (l.second() != second) return false;
  }
  return true;
}

}  // namespace

CompressedWord concat(const CompressedWord& a, const CompressedWord& b) {
  int sa = 0, sb = 0;
  if (uniform_strand(a.terminals(), sa) && uniform_strand(b.terminals(), sb) &&
      sa != sb) {
    throw AlphabetMismatch("cannot concatenate factor programs over strand " +
                           std::to_string(sa) + " and strand " +
                           std::to_string(sb));
  }

  std::vector<Letter> terminals = a.terminals();
  std::vector<std::size_t> bmap(b.terminals().size());
  for (std::size_t t = 0; t < b.terminals().size(); ++t) {
    const Letter& l = b.terminals()[t];
    const auto it = std::find(terminals.begin(), terminals.end(), l);
    if (it == terminals.end()) {
      bmap[t] = terminals.size();
      terminals.push_back(l);
    } else {
      bmap[t] = static_cast<std::size_t>(it - terminals.begin());
    }
  }

  std::vector<CompressedWord::Symbol> symbols;
  symbols.reserve(a.size() + b.size() + 2);
  std::vector<std::uint32_t> ends;
  ends.reserve(a.rule_count() + b.rule_count() + 1);
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    const auto r = a.rule(i);
    symbols.insert(symbols.end(), r.begin(), r.end());
    ends.push_back(static_cast<std::uint32_t>(symbols.size()));
  }
  const std::size_t shift = a.rule_count();
  for (std::size_t i = 0; i < b.rule_count(); ++i) {
    for (CompressedWord::Symbol s : b.rule(i)) {
      symbols.push_back(
          CompressedWord::symbol_is_terminal(s)
              ? CompressedWord::terminal_symbol(
                    bmap[CompressedWord::symbol_index(s)])
              : CompressedWord::nonterminal_symbol(
                    CompressedWord::symbol_index(s) + shift));
    }
    ends.push_back(static_cast<std::uint32_t>(symbols.size()));
  }
  symbols.push_back(CompressedWord::nonterminal_symbol(a.root()));
  symbols.push_back(CompressedWord::nonterminal_symbol(b.root() + shift));
  ends.push_back(static_cast<std::uint32_t>(symbols.size()));
  return CompressedWord(std::move(terminals), std::move(symbols),
                        std::move(ends));
}

CompressedWord invert(const CompressedWord& a) {
  std::vector<Letter> terminals;
  terminals.reserve(a.terminals().size());
  for (const Letter& l : a.terminals()) terminals.push_back(l.inverse());
  std::vector<CompressedWord::Symbol> symbols;
  symbols.reserve(a.size());
  std::vector<std::uint32_t> ends;
  ends.reserve(a.rule_count());
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    const auto r = a.rule(i);
    for (std::size_t t = r.size(); t-- > 0;) symbols.push_back(r[t]);
    ends.push_back(static_cast<std::uint32_t>(symbols.size()));
  }
  return CompressedWord(std::move(terminals), std::move(symbols),
                        std::move(ends));
}

CompressedWord reduce(const CompressedWord& a, std::uint64_t max_len) {
  return CompressedWord::from_word(free_reduce(a.evaluate(max_len)));
}

CompressedWord fibonacci_slp(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_slp needs n >= 1");
  // Terminal 0 prints as 'a', terminal 1 as 'b'.
  std::vector<Letter> terminals{Letter(1, 2), Letter(1, 3)};
  std::vector<std::vector<CompressedWord::Symbol>> rules;
  rules.push_back({CompressedWord::terminal_symbol(1)});  // X1 -> b
  if (n >= 2) rules.push_back({CompressedWord::terminal_symbol(0)});  // X2 -> a
  for (int i = 3; i <= n; ++i) {
    rules.push_back({CompressedWord::nonterminal_symbol(i - 2),
                     CompressedWord::nonterminal_symbol(i - 3)});
  }
  return CompressedWord(std::move(terminals), rules);
}

nlohmann::json slp_to_json(const CompressedWord& a) {
  nlohmann::json terminals = nlohmann::json::array();
  for (const Letter& l : a.terminals()) terminals.push_back(format_letter(l));
  nlohmann::json rules = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    nlohmann::json rhs = nlohmann::json::array();
    for (CompressedWord::Symbol s : a.rule(i)) {
      if (CompressedWord::symbol_is_terminal(s)) {
        rhs.push_back(format_letter(a.terminals()[CompressedWord::symbol_index(s)]));
      } else {
        rhs.push_back("X" + std::to_string(CompressedWord::symbol_index(s) + 1));
      }
    }
    rules.push_back({{"lhs", "X" + std::to_string(i + 1)}, {"rhs", rhs}});
  }
  return {{"terminals", terminals},
          {"rules", rules},
          {"root", "X" + std::to_string(a.rule_count())}};
}

CompressedWord slp_from_json(const nlohmann::json& j) {
  std::vector<Letter> terminals;
  for (const auto& t : j.at("terminals")) {
    const BraidWord w = parse_word(t.get<std::string>());
    if (w.size() != 1)
      throw std::invalid_argument("terminal entry must be a single letter");
    terminals.push_back(w[0]);
  }
  const auto& jrules = j.at("rules");
  std::vector<std::vector<CompressedWord::Symbol>> rules;
  rules.reserve(jrules.size());
  for (std::size_t i = 0; i < jrules.size(); ++i) {
    const auto& jr = jrules[i];
    if (jr.at("lhs").get<std::string>() != "X" + std::to_string(i + 1))
      throw std::invalid_argument("rules must be listed as X1..Xq in order");
    std::vector<CompressedWord::Symbol> rhs;
    for (const auto& sym : jr.at("rhs")) {
      const std::string s = sym.get<std::string>();
      if (!s.empty() && s[0] == 'X') {
        const unsigned long number = std::stoul(s.substr(1));
        if (number < 1 || number > i) {
          throw std::invalid_argument("rule " + jr.at("lhs").get<std::string>() +
                                      " references " + s +
                                      " outside the smaller rules");
        }
        rhs.push_back(CompressedWord::nonterminal_symbol(number - 1));
      } else {
        const BraidWord w = parse_word(s);
        if (w.size() != 1)
          throw std::invalid_argument("rule symbol must be a letter or X<k>");
        const auto it =
            std::find(terminals.begin(), terminals.end(), w[0]);
        if (it == terminals.end())
          throw std::invalid_argument("rule uses a letter not in terminals");
        rhs.push_back(CompressedWord::terminal_symbol(
            static_cast<std::size_t>(it - terminals.begin())));
      }
    }
    rules.push_back(std::move(rhs));
  }
  if (j.at("root").get<std::string>() != "X" + std::to_string(rules.size()))
    throw std::invalid_argument("root must be the greatest rule");
  return CompressedWord(std::move(terminals), rules);
}

}  // namespace braidcomb
