#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gluing/error.hpp"
#include "gluing/graph.hpp"

namespace gluing {

/// Ultimately periodic sequence preperiod · period · period · ...
template <typename Symbol>
struct BasicUPWord {
  std::vector<Symbol> preperiod;
  std::vector<Symbol> period;

  const Symbol& at(std::size_t n) const {
    if (n < preperiod.size()) return preperiod[n];
    return period[(n - preperiod.size()) % period.size()];
  }

  /// First `n` symbols of the denoted sequence.
  std::vector<Symbol> prefix(std::size_t n) const {
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
  }

  friend bool operator==(const BasicUPWord&, const BasicUPWord&) = default;
  friend auto operator<=>(const BasicUPWord&, const BasicUPWord&) = default;
};

using UPWord = BasicUPWord<std::string>;

/// Primitive period, shortest preperiod. Two words denote the same sequence iff their
/// canonical forms are equal.
template <typename Symbol>
BasicUPWord<Symbol> canonical(BasicUPWord<Symbol> w) {
  if (w.period.empty()) throw InputError("ultimately periodic word with empty period");
  const std::size_t n = w.period.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool root = true;
    for (std::size_t k = d; k < n && root; ++k) root = w.period[k] == w.period[k - d];
    if (root) {
      w.period.resize(d);
      break;
    }
  }
  while (!w.preperiod.empty() && w.preperiod.back() == w.period.back()) {
    w.preperiod.pop_back();
    std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
  }
  return w;
}

template <typename Symbol>
bool same_sequence(const BasicUPWord<Symbol>& a, const BasicUPWord<Symbol>& b) {
  return canonical(a) == canonical(b);
}

/// Index bookkeeping for reading two ultimately periodic words in lockstep: from index
/// `preperiod` on, the letter pair at n depends only on phase(n).
struct PairSchedule {
  std::size_t preperiod = 0;
  std::size_t period = 1;

  template <typename Symbol>
  static PairSchedule of(const BasicUPWord<Symbol>& x, const BasicUPWord<Symbol>& y) {
    return {std::max(x.preperiod.size(), y.preperiod.size()), std::lcm(x.period.size(), y.period.size())};
  }

  bool periodic_at(std::size_t n) const { return n >= preperiod; }
  std::size_t phase(std::size_t n) const { return (n - preperiod) % period; }
};

/// Index of the first position where the sequences differ, or nullopt when they are equal.
template <typename Symbol>
std::optional<std::size_t> divergence_index(const BasicUPWord<Symbol>& x, const BasicUPWord<Symbol>& y) {
  const auto schedule = PairSchedule::of(x, y);
  // Equal on [0, p + P) implies equal everywhere.
  const std::size_t horizon = schedule.preperiod + schedule.period;
  for (std::size_t n = 0; n < horizon; ++n)
    if (!(x.at(n) == y.at(n))) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Literal grammar:  sym sym ... ( sym sym ... )*

namespace upword_detail {

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else if (c == '(' || c == ')' || c == '*') {
      flush();
      tokens.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return tokens;
}

}  // namespace upword_detail

inline UPWord parse_upword(std::string_view text) {
  const auto tokens = upword_detail::tokenize(text);
  UPWord w;
  std::size_t k = 0;
  for (; k < tokens.size() && tokens[k] != "("; ++k) {
    if (tokens[k] == ")" || tokens[k] == "*") throw InputError("unexpected '" + tokens[k] + "' in word literal");
    w.preperiod.push_back(tokens[k]);
  }
  if (k == tokens.size()) throw InputError("word literal has no period: expected '( ... )*'");
  for (++k; k < tokens.size() && tokens[k] != ")"; ++k) {
    if (tokens[k] == "(" || tokens[k] == "*") throw InputError("unexpected '" + tokens[k] + "' in period");
    w.period.push_back(tokens[k]);
  }
  if (k == tokens.size()) throw InputError("unterminated period in word literal");
  if (k + 1 >= tokens.size() || tokens[k + 1] != "*") throw InputError("period must be followed by '*'");
  if (k + 2 != tokens.size()) throw InputError("trailing input after period");
  if (w.period.empty()) throw InputError("empty period in word literal");
  return w;
}

/// Parses and rejects symbols outside `alphabet`.
template <typename Alphabet>
UPWord parse_upword(std::string_view text, const Alphabet& known) {
  UPWord w = parse_upword(text);
  auto check = [&](const std::string& s) {
    if (!known(s)) throw InputError("unknown symbol '" + s + "'");
  };
  std::for_each(w.preperiod.begin(), w.preperiod.end(), check);
  std::for_each(w.period.begin(), w.period.end(), check);
  return w;
}

inline std::string print_upword(const UPWord& w) {
  std::ostringstream out;
  for (const auto& s : w.preperiod) out << s << ' ';
  out << '(';
  for (std::size_t k = 0; k < w.period.size(); ++k) out << (k ? " " : "") << w.period[k];
  out << ")*";
  return out.str();
}

}  // namespace gluing
