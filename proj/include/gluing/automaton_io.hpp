#pragma once

// Automaton serialization.
//
// Structured text (JSON):
//   {
//     "alphabet": ["S", "0", "1"],
//     "colors": ["1"],
//     "initial": "q0(0)",
//     "states": ["q0(0)", "q0(1)", "q1(1 in; 1 out)", ...],
//     "transitions": [{"from": "q0(0)", "a": "S", "b": "S", "to": "q0(1)"}, ...]
//   }
// States are written by label; import rebuilds them in the listed order.
//
// DOT: one node per state labeled with its quadruple (the initial state drawn with a double
// border) and one arrow per transition labeled "(a,b)".

#include <sstream>
#include <string>

#include <json.hpp>

#include "gluing/automaton.hpp"
#include "gluing/error.hpp"

namespace gluing {

inline std::string automaton_to_dot(const GluingAutomaton& aut) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::ostringstream out;
  out << "digraph gluing {\n  rankdir=LR;\n";
  for (StateIndex s = 0; s < aut.state_count(); ++s) {
    out << "  s" << s << " [label=\"" << escape(aut.label(s)) << "\"";
    if (s == aut.initial()) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& t : aut.transitions())
    out << "  s" << t.from << " -> s" << t.to << " [label=\"" << escape(aut.letter_label(t.letter)) << "\"];\n";
  out << "}\n";
  return out.str();
}

inline nlohmann::json automaton_to_json(const GluingAutomaton& aut) {
  nlohmann::json j;
  j["alphabet"] = aut.alphabet();
  j["colors"] = aut.colors();
  j["initial"] = aut.label(aut.initial());
  auto states = nlohmann::json::array();
  for (StateIndex s = 0; s < aut.state_count(); ++s) states.push_back(aut.label(s));
  j["states"] = std::move(states);
  auto transitions = nlohmann::json::array();
  for (const auto& t : aut.transitions()) {
    transitions.push_back({{"from", aut.label(t.from)},
                           {"a", aut.alphabet()[t.letter.a]},
                           {"b", aut.alphabet()[t.letter.b]},
                           {"to", aut.label(t.to)}});
  }
  j["transitions"] = std::move(transitions);
  return j;
}

inline std::string export_automaton(const GluingAutomaton& aut, std::string_view format) {
  if (format == "dot") return automaton_to_dot(aut);
  if (format == "json") return automaton_to_json(aut).dump(2) + "\n";
  throw InputError("unknown automaton format '" + std::string(format) + "'");
}

inline GluingAutomaton automaton_from_json(const nlohmann::json& j) {
  try {
    const auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    const auto colors = j.at("colors").get<std::vector<std::string>>();
    GluingAutomaton aut(alphabet, colors);
    std::map<std::string, StateIndex> by_label;
    for (const auto& item : j.at("states")) {
      const auto label = item.get<std::string>();
      auto s = parse_state_label(label, colors);
      if (!s) throw InputError("malformed state '" + label + "'");
      if (!s->is_q0() ? (s->i >= colors.size() || s->j >= colors.size()) : s->slot > colors.size())
        throw InputError("state '" + label + "' out of range");
      by_label[label] = aut.add_state(*s);
    }
    auto state = [&](const nlohmann::json& v) {
      auto it = by_label.find(v.get<std::string>());
      if (it == by_label.end()) throw InputError("transition refers to unknown state '" + v.get<std::string>() + "'");
      return it->second;
    };
    const auto initial = state(j.at("initial"));
    if (!aut.state(initial).is_q0() || aut.state(initial).slot != kBaseSlot || aut.initial() != initial)
      throw InputError("initial state must be q0(0)");
    for (const auto& t : j.at("transitions")) {
      auto a = aut.symbol(t.at("a").get<std::string>());
      auto b = aut.symbol(t.at("b").get<std::string>());
      if (!a || !b) throw InputError("transition uses a symbol outside the alphabet");
      aut.add_transition(state(t.at("from")), Letter{*a, *b}, state(t.at("to")));
    }
    return aut;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed automaton: ") + e.what());
  } catch (const BuildError& e) {
    throw InputError(std::string("malformed automaton: ") + e.what());
  }
}

inline GluingAutomaton import_automaton(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed automaton: ") + e.what());
  }
  return automaton_from_json(j);
}

}  // namespace gluing
