// rsafe -- command-line front end for the reactive-safety checker.
//
// Exit codes: 0 for a safe verdict (or a positive classify/equiv answer),
// 1 for NOT-REACTIVE-SAFE (or a negative answer), 2 for usage and parse
// errors, 3 for resource-cap errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rsafe/rsafe.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rsafe::parse_error("cannot open file '" + path + "'", 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

struct CheckOptions {
  std::string ltl;
  std::string hoa;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string emit_monitor;
  std::string dot_dir;
  bool witness = false;
  std::size_t max_states = 200000;
};

// Loads the property plus signature from --ltl/--hoa and runs the pipeline.
rsafe::Verdict run_pipeline(const CheckOptions& opt, rsafe::Signature& sig,
                            rsafe::CheckArtifacts* artifacts) {
  if (!opt.ltl.empty()) {
    if (opt.inputs.empty() && opt.outputs.empty())
      throw rsafe::parse_error("--ltl requires --inputs/--outputs", 0);
    sig = rsafe::Signature(opt.inputs, opt.outputs);
    rsafe::Formula f = rsafe::parse_ltl(opt.ltl, sig);
    return rsafe::check_reactive_safety(f, sig, opt.max_states, artifacts);
  }
  rsafe::ParityWordAutomaton a = rsafe::read_hoa(read_file(opt.hoa));
  sig = a.sig();
  if (!opt.inputs.empty() && opt.inputs != sig.inputs())
    throw rsafe::parse_error("--inputs disagrees with the HOA spec-io header", 0);
  if (!opt.outputs.empty() && opt.outputs != sig.outputs())
    throw rsafe::parse_error("--outputs disagrees with the HOA AP list", 0);
  return rsafe::check_reactive_safety(a, opt.max_states, artifacts);
}

void dump_artifacts(const rsafe::CheckArtifacts& art, const std::string& dir) {
  std::filesystem::create_directories(dir);
  if (art.nba) write_file(dir + "/nba.dot", rsafe::write_dot(*art.nba, "nba"));
  if (art.dpw) write_file(dir + "/dpw.dot", rsafe::write_dot(*art.dpw, "dpw"));
  if (art.spread_automaton)
    write_file(dir + "/spread.dot", rsafe::write_dot(*art.spread_automaton, "spread"));
  if (art.pruned) write_file(dir + "/pruned.dot", rsafe::write_dot(*art.pruned, "pruned"));
}

int cmd_check(const CheckOptions& opt) {
  rsafe::Signature sig;
  rsafe::CheckArtifacts artifacts;
  rsafe::CheckArtifacts* art = opt.dot_dir.empty() ? nullptr : &artifacts;
  rsafe::Verdict v = run_pipeline(opt, sig, art);
  if (!opt.dot_dir.empty()) dump_artifacts(artifacts, opt.dot_dir);

  switch (v.cls) {
    case rsafe::SafetyClass::LinearSafe:
      std::cout << "LINEAR-SAFE\n";
      break;
    case rsafe::SafetyClass::ReactiveSafeNotLinear:
      std::cout << "REACTIVE-SAFE (not linear-time safe)\n";
      break;
    case rsafe::SafetyClass::NotReactiveSafe:
      std::cout << "NOT-REACTIVE-SAFE\n";
      break;
  }
  if (!opt.emit_monitor.empty() && v.monitor)
    write_file(opt.emit_monitor, rsafe::write_hoa(*v.monitor, "monitor"));
  if (opt.witness && v.witness)
    std::cout << "witness: " << rsafe::lasso_to_string(sig, *v.witness) << "\n";
  return v.cls == rsafe::SafetyClass::NotReactiveSafe ? 1 : 0;
}

int cmd_classify(const CheckOptions& opt) {
  rsafe::Signature sig;
  rsafe::ParityWordAutomaton dpw;
  if (!opt.ltl.empty()) {
    sig = rsafe::Signature(opt.inputs, opt.outputs);
    rsafe::Formula f = rsafe::parse_ltl(opt.ltl, sig);
    dpw = rsafe::determinize(rsafe::ltl_to_nba(rsafe::to_nnf(f), sig), opt.max_states);
  } else {
    dpw = rsafe::read_hoa(read_file(opt.hoa));
    if (!dpw.is_deterministic()) dpw = rsafe::determinize(dpw, opt.max_states);
  }
  bool safe = rsafe::classify_linear_safety(rsafe::complete(dpw));
  std::cout << (safe ? "LINEAR-SAFE\n" : "NOT-LINEAR-SAFE\n");
  return safe ? 0 : 1;
}

int cmd_equiv(const std::string& f1, const std::string& f2) {
  rsafe::ParityWordAutomaton m1 = rsafe::read_hoa(read_file(f1));
  rsafe::ParityWordAutomaton m2 = rsafe::read_hoa(read_file(f2));
  bool eq = rsafe::monitor_equivalent(m1, m2);
  std::cout << (eq ? "EQUIVALENT\n" : "NOT-EQUIVALENT\n");
  return eq ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reactive-safety checker for LTL and omega-automata properties"};
  app.require_subcommand(1);

  CheckOptions opt;
  auto add_property_flags = [&](CLI::App* cmd) {
    auto* ltl = cmd->add_option("--ltl", opt.ltl, "LTL formula text");
    auto* hoa = cmd->add_option("--hoa", opt.hoa, "HOA automaton file");
    ltl->excludes(hoa);
    cmd->add_option("--inputs", opt.inputs, "comma-separated input propositions")
        ->delimiter(',');
    cmd->add_option("--outputs", opt.outputs, "comma-separated output propositions")
        ->delimiter(',');
    cmd->add_option("--max-states", opt.max_states, "determinization state cap");
  };

  CLI::App* check = app.add_subcommand("check", "decide reactive safety");
  add_property_flags(check);
  check->add_option("--emit-monitor", opt.emit_monitor, "write the safety monitor (HOA)");
  check->add_flag("--witness", opt.witness, "print a lasso witness on a negative verdict");
  check->add_option("--dot-dir", opt.dot_dir, "dump pipeline stages as DOT files");

  CLI::App* classify = app.add_subcommand("classify", "decide linear-time safety only");
  add_property_flags(classify);

  std::string equiv_a, equiv_b;
  CLI::App* equiv = app.add_subcommand("equiv", "compare two safety monitors (HOA)");
  equiv->add_option("m1", equiv_a, "first monitor")->required();
  equiv->add_option("m2", equiv_b, "second monitor")->required();

  try {
    app.parse(argc, argv);
    if (check->parsed() || classify->parsed()) {
      if (opt.ltl.empty() == opt.hoa.empty())
        throw rsafe::parse_error("exactly one of --ltl or --hoa is required", 0);
    }
    if (check->parsed()) return cmd_check(opt);
    if (classify->parsed()) return cmd_classify(opt);
    return cmd_equiv(equiv_a, equiv_b);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rsafe::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
