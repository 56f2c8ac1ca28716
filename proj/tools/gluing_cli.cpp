// gluing: command-line front end for replacement systems and their gluing automata.
//
// Exit codes: 0 success / positive answer, 1 negative answer, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gluing/gluing.hpp"

namespace {

using namespace gluing;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

ReplacementSystem load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return load_system(arg);
  try {
    return builtin_from_spec(arg);
  } catch (const InputError& e) {
    throw InputError("'" + arg + "' is neither a readable file nor a builtin system (" + e.what() + ")");
  }
}

// Decision procedures need the loop assumption; normalize quietly when it fails.
ReplacementSystem prepared(const ReplacementSystem& rs) {
  if (!validate_system(rs).empty() || check_loop_assumption(rs).empty()) return rs;
  std::cerr << "note: system violates the loop assumption; using its normalization\n";
  return normalize_loops(rs).system;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_validate(const std::string& file) {
  const auto rs = load(file);
  const auto errors = validate_system(rs);
  if (!errors.empty()) {
    std::cout << "structure: " << errors.size() << " error(s)\n";
    for (const auto& e : errors) std::cout << "  " << e << "\n";
    return kError;
  }
  std::cout << "structure: ok\n";
  if (rs.base.edges.empty()) std::cout << "warning: base graph has no edges; the symbol space is empty\n";
  const auto report = check_expanding(rs);
  std::cout << "expanding: " << yes_no(report.expanding()) << "\n"
            << "  no isolated vertices: " << yes_no(report.no_isolated_vertices) << "\n"
            << "  no edge between iota and tau: " << yes_no(report.no_boundary_edge) << "\n"
            << "  at least two edges and an interior vertex: " << yes_no(report.enough_structure) << "\n";
  for (const auto& v : report.violations) std::cout << "  " << v << "\n";
  const auto loops = check_loop_assumption(rs);
  if (loops.empty()) {
    std::cout << "loop assumption: satisfied\n";
  } else {
    std::cout << "loop assumption: violated; run 'normalize' before building the automaton\n";
    for (const auto& v : loops) std::cout << "  " << v << "\n";
  }
  return report.expanding() ? kYes : kNo;
}

int cmd_normalize(const std::string& file, const std::string& out, const std::string& map_out) {
  const auto n = normalize_loops(load(file));
  emit(write_system(n.system), out);
  if (!map_out.empty()) {
    Json j = {{"recoloring", n.recoloring}, {"copies", n.copies}};
    std::ofstream f(map_out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + map_out + "'");
    f << j.dump(2) << "\n";
  } else {
    for (const auto& [sym, color] : n.recoloring) std::cerr << sym << " -> " << color << "\n";
    for (const auto& [sym, src] : n.copies) std::cerr << sym << " copies " << src << "\n";
  }
  return kYes;
}

int cmd_expand(const std::string& file, std::size_t depth, const std::string& format, const std::string& out,
               std::size_t cap) {
  if (format != "dot" && format != "json") throw InputError("unknown format '" + format + "'");
  const IndexedSystem sys(prepared(load(file)));
  const auto g = full_expansion(sys, depth, cap);
  emit(format == "dot" ? expansion_to_dot(sys, g) : expansion_to_json(sys, g).dump(2) + "\n", out);
  return kYes;
}

int cmd_automaton(const std::string& file, const std::string& format, bool trimmed, const std::string& out) {
  const IndexedSystem sys(prepared(load(file)));
  auto aut = build_automaton(sys);
  if (trimmed) aut = trim(aut);
  emit(export_automaton(aut, format), out);
  return kYes;
}

UPWord parse_word(const IndexedSystem& sys, const std::string& text) {
  return parse_upword(text, [&](const std::string& s) { return sys.find_symbol(s).has_value(); });
}

int cmd_recognize(const std::string& file, const std::string& xs, const std::string& ys) {
  const IndexedSystem sys(prepared(load(file)));
  const auto aut = trim(build_automaton(sys));
  const auto x = parse_word(sys, xs);
  const auto y = parse_word(sys, ys);
  const auto d = glued(aut, x, y);
  std::cout << "x = " << print_upword(x) << "\ny = " << print_upword(y) << "\n";
  for (std::size_t n = 0; n < d.trace.steps.size(); ++n) {
    const auto& t = d.trace.steps[n];
    std::cout << n << ": " << aut.label(t.from) << " --" << aut.letter_label(t.letter) << "--> " << aut.label(t.to)
              << "\n";
  }
  if (d.trace.status == RunStatus::stuck) {
    const std::size_t k = *d.trace.stuck_index;
    std::cout << "stuck at step " << k << " in " << aut.label(d.trace.final_state) << " on (" << x.at(k) << ","
              << y.at(k) << ")\n";
  } else {
    std::cout << "cycling from step " << *d.trace.cycle_start << " in " << aut.label(d.trace.final_state) << "\n";
  }
  std::cout << (d.glued ? "glued" : "not glued") << "\n";
  return d.glued ? kYes : kNo;
}

int cmd_oracle(const std::string& file, const std::string& xs, const std::string& ys) {
  const IndexedSystem sys(prepared(load(file)));
  const auto x = parse_word(sys, xs);
  const auto y = parse_word(sys, ys);
  const auto v = oracle_glued(sys, x, y);
  std::cout << "x = " << print_upword(x) << "\ny = " << print_upword(y) << "\n";
  if (v.equal_sequences) {
    std::cout << "equal sequences\nglued\n";
    return kYes;
  }
  std::cout << "diverge at " << *v.divergence << "\n";
  for (const auto& step : v.certificate) {
    const auto px = x.prefix(step.index + 1);
    const auto py = y.prefix(step.index + 1);
    std::cout << step.index << ": " << format_address(sys, to_ids(sys, px)) << " | "
              << format_address(sys, to_ids(sys, py)) << "  " << step.descriptor.to_string() << "\n";
  }
  if (v.cycle_start) std::cout << "repeats step " << *v.cycle_start << "\n";
  std::cout << (v.glued ? "glued" : "not glued") << "\n";
  return v.glued ? kYes : kNo;
}

int cmd_fuzz(const std::string& file, const FuzzOptions& opt, const std::string& report_out) {
  const IndexedSystem sys(prepared(load(file)));
  const auto r = fuzz(sys, opt);
  std::cout << "samples: " << r.samples << "\nglued: " << r.glued << "\ndisagreements: " << r.disagreements << "\n";
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    std::cout << "first counterexample (pair " << c.input.index << ", " << to_string(c.input.kind) << "):\n"
              << "  x = " << print_upword(to_names(sys, c.input.x)) << "\n"
              << "  y = " << print_upword(to_names(sys, c.input.y)) << "\n"
              << "  automaton: " << (c.automaton ? "glued" : "not glued")
              << ", oracle: " << (c.oracle ? "glued" : "not glued") << "\n";
  }
  if (!report_out.empty()) emit(fuzz_report_to_json(sys, opt, r).dump(2) + "\n", report_out);
  return r.disagreements == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge replacement systems, their gluing automata and a brute-force gluing oracle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gluing 1.0");

  const std::string system_help = "system file (JSON) or builtin: interval, dendrite:N, basilica, basilica-original";
  std::string file;
  std::string out;
  std::string format = "dot";

  auto* validate = app.add_subcommand("validate", "check structure, expanding conditions and the loop assumption");
  validate->add_option("system", file, system_help)->required();

  std::string map_out;
  auto* normalize = app.add_subcommand("normalize", "split mixed loop/non-loop colors");
  normalize->add_option("system", file, system_help)->required();
  normalize->add_option("--out", out, "write the system here instead of stdout");
  normalize->add_option("--map", map_out, "write the recoloring map (JSON) here instead of stderr");

  std::size_t depth = 0;
  std::size_t cap = kDefaultDepthCap;
  auto* expand = app.add_subcommand("expand", "export the full expansion E_m");
  expand->add_option("system", file, system_help)->required();
  expand->add_option("--depth", depth, "expansion depth m")->required();
  expand->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  expand->add_option("--out", out, "output file");
  expand->add_option("--max-depth", cap, "depth cap")->capture_default_str();

  bool trimmed = false;
  auto* automaton = app.add_subcommand("automaton", "build and export the gluing automaton");
  automaton->add_option("system", file, system_help)->required();
  automaton->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  automaton->add_flag("--trim", trimmed, "keep only states reachable from q0(0)");
  automaton->add_option("--out", out, "output file");

  std::string xs;
  std::string ys;
  auto* recognize = app.add_subcommand("recognize", "decide gluing of two words with the automaton");
  recognize->add_option("system", file, system_help)->required();
  recognize->add_option("--x", xs, "first word, e.g. \"S 0 (1)*\"")->required();
  recognize->add_option("--y", ys, "second word")->required();

  auto* oracle = app.add_subcommand("oracle", "decide gluing of two words by brute-force expansion");
  oracle->add_option("system", file, system_help)->required();
  oracle->add_option("--x", xs, "first word")->required();
  oracle->add_option("--y", ys, "second word")->required();

  FuzzOptions fopt;
  std::string report_out;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "compare automaton and oracle on random word pairs");
  fuzz_cmd->add_option("system", file, system_help)->required();
  fuzz_cmd->add_option("--samples", fopt.samples, "number of pairs")->capture_default_str();
  fuzz_cmd->add_option("--max-preperiod", fopt.max_preperiod, "preperiod bound")->capture_default_str();
  fuzz_cmd->add_option("--max-period", fopt.max_period, "period bound")->check(CLI::PositiveNumber)->capture_default_str();
  fuzz_cmd->add_option("--seed", fopt.seed, "RNG seed")->capture_default_str();
  fuzz_cmd->add_option("--jobs", fopt.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  fuzz_cmd->add_option("--report", report_out, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*normalize) return cmd_normalize(file, out, map_out);
    if (*expand) return cmd_expand(file, depth, format, out, cap);
    if (*automaton) return cmd_automaton(file, format, trimmed, out);
    if (*recognize) return cmd_recognize(file, xs, ys);
    if (*oracle) return cmd_oracle(file, xs, ys);
    if (*fuzz_cmd) return cmd_fuzz(file, fopt, report_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const BuildError& e) {
    std::cerr << "error: construction failed: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
