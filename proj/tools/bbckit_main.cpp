// bbckit: command-line front end for checking, black-box checking, MBT,
// experiment matrices and specification conversion.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bbckit/bbc.hpp"
#include "bbckit/dot.hpp"
#include "bbckit/error.hpp"
#include "bbckit/experiment.hpp"
#include "bbckit/mbt.hpp"
#include "bbckit/model_checker.hpp"

namespace fs = std::filesystem;
using namespace bbckit;

namespace {

constexpr int kOk = 0;
constexpr int kBug = 1;
constexpr int kUsage = 2;

/// Error carrying the file it came from.
class FileError : public Error {
 public:
  FileError(const std::string& file, const std::string& what) : Error(file + ": " + what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError(path.string(), "cannot write");
  out << text;
}

MealyMachine load_mealy(const std::string& path) {
  try {
    return parse_mealy(read_file(path));
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(path, e.what());
  }
}

SpecFormat spec_format(const std::string& name) {
  if (name == "plain") return SpecFormat::plain;
  if (name == "bug") return SpecFormat::bug_automaton;
  if (name == "split-io") return SpecFormat::split_io;
  throw ConfigError("unknown spec format " + name);
}

SpecSet load_specs(const std::vector<std::string>& paths, const IoAlphabet& io,
                   const std::string& format) {
  SpecSet set{io, {}};
  for (const auto& p : paths) {
    try {
      set.specs.push_back(
          spec_from_dot(read_file(p), io, spec_format(format), fs::path(p).stem().string()));
    } catch (const FileError&) {
      throw;
    } catch (const Error& e) {
      throw FileError(p, e.what());
    }
  }
  return set;
}

std::optional<std::uint64_t> positive(std::uint64_t v) {
  return v ? std::optional<std::uint64_t>(v) : std::nullopt;
}

int cmd_check(const std::string& sut_path, const std::vector<std::string>& spec_paths,
              const std::string& format) {
  MealyMachine m = load_mealy(sut_path);
  SpecSet set = load_specs(spec_paths, m.io(), format);
  bool all = true;
  for (const auto& s : set.specs) {
    CheckVerdict v = check(m, s);
    if (v.satisfied()) {
      std::cout << s.name() << ": satisfied\n";
    } else {
      all = false;
      std::cout << s.name() << ": violated by " << to_string(v.counterexample->inputs, m.inputs())
                << " (" << to_string(v.counterexample->word, m.io().combined()) << ")\n";
    }
  }
  return all ? kOk : kBug;
}

struct EngineArgs {
  std::string sut;
  std::vector<std::string> specs;
  std::string spec_format = "plain";
  std::string mode = "bbc";
  std::uint64_t seed = 0;
  std::uint64_t step_budget = 0;
  std::uint64_t max_tests = 0;
  std::string monitor = "on";
  bool monitor_testing = false;
  std::string out;
};

int cmd_bbc(const EngineArgs& a) {
  MealyMachine m = load_mealy(a.sut);
  SpecSet set = load_specs(a.specs, m.io(), a.spec_format);
  BbcConfig cfg;
  cfg.seed = a.seed;
  cfg.conformance.seed = a.seed;
  cfg.budget.max_steps = positive(a.step_budget);
  cfg.conformance.max_tests = positive(a.max_tests);
  if (!cfg.conformance.max_tests && cfg.budget.max_steps) cfg.conformance.max_tests = 1000000;
  cfg.monitor_enabled = a.monitor == "on";
  cfg.monitor_testing = a.monitor_testing;
  cfg.mode = a.mode == "bbc" ? BbcMode::bbc : BbcMode::learn_then_check;
  Sut sut(m);
  BbcOutcome out = run_engine(sut, set, cfg);
  for (const auto& p : out.properties) {
    std::cout << p.property << ": " << to_string(p.resolution);
    if (p.bug) {
      std::cout << " by " << (p.bug->discovered_by == DiscoveredBy::monitor ? "monitor" : "model-check")
                << " at step " << p.bug->global_step << ": " << to_string(p.bug->witness, m.io());
    }
    std::cout << '\n';
  }
  std::cout << "queries " << out.stats.total_queries() << " (learning " << out.stats.learning_queries
            << ", testing " << out.stats.testing_queries << "), steps " << out.stats.total_steps()
            << ", hypotheses " << out.hypotheses << ", final states "
            << (out.final_hypothesis ? out.final_hypothesis->num_states() : 0)
            << (out.budget_exhausted ? ", budget exhausted" : "") << '\n';
  if (!a.out.empty() && out.final_hypothesis) {
    fs::create_directories(a.out);
    write_file(fs::path(a.out) / "hypothesis.dot", serialize(*out.final_hypothesis));
  }
  return kOk;
}

int cmd_mbt(const EngineArgs& a, std::uint64_t tests, std::size_t length) {
  MealyMachine m = load_mealy(a.sut);
  SpecSet set = load_specs(a.specs, m.io(), a.spec_format);
  for (const auto& s : set.specs) {
    Sut sut(m);
    if (a.step_budget) sut.set_budget({a.step_budget, std::nullopt});
    MbtReport r = run_mbt_suite(s, sut, tests, a.seed,
                                length ? std::optional<std::size_t>(length) : std::nullopt);
    std::cout << s.name() << ": " << (r.found ? "fail" : "pass") << " after " << r.tests_run
              << " tests, " << r.stats.total_steps() << " steps";
    if (r.failure) std::cout << ": " << to_string(r.failure->trace, m.io());
    std::cout << '\n';
  }
  return kOk;
}

int cmd_experiment(const std::string& config, const std::string& out_override,
                   std::uint64_t seeds) {
  ExperimentConfig cfg = load_experiment_config(config);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (seeds) cfg.seeds = seeds;
  auto rows = run_experiment(cfg, default_workers());
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream out(cfg.out_dir / "rows.csv", std::ios::binary);
    write_rows_csv(out, rows);
  }
  {
    std::ofstream out(cfg.out_dir / "summary.csv", std::ios::binary);
    write_summary_csv(out, summarize(rows));
  }
  std::cout << rows.size() << " rows written to " << (cfg.out_dir / "rows.csv").string() << '\n';
  return kOk;
}

IoAlphabet io_from_args(const std::string& sut, const std::string& inputs,
                        const std::string& outputs, const std::optional<IoAlphabet>& declared) {
  if (!sut.empty()) return load_mealy(sut).io();
  if (!inputs.empty() || !outputs.empty()) {
    auto names = [](const std::string& list) {
      std::vector<std::string> out;
      std::stringstream ss(list);
      for (std::string s; std::getline(ss, s, ',');) out.push_back(s);
      return out;
    };
    return IoAlphabet(Alphabet(names(inputs), AlphabetKind::input),
                      Alphabet(names(outputs), AlphabetKind::output));
  }
  if (declared) return *declared;
  throw ConfigError("cannot tell inputs from outputs; pass --sut or --inputs/--outputs");
}

int cmd_convert(bool bug, bool split, const std::string& in, const std::string& out,
                const std::string& sut, const std::string& inputs, const std::string& outputs) {
  if (bug == split) throw ConfigError("choose exactly one of --bug-automaton and --split-io");
  const std::string text = read_file(in);
  const std::string name = fs::path(in).stem().string();
  std::string result;
  try {
    if (bug) {
      ParsedDfa parsed = parse_dfa_document(text);
      IoAlphabet io = io_from_args(sut, inputs, outputs, parsed.io);
      result = serialize(bug_automaton_to_spec(parsed.dfa.over(io.combined()), io, name));
    } else {
      Dfa pairs = parse_dfa(text);
      std::optional<IoAlphabet> inferred;
      if (sut.empty() && inputs.empty() && outputs.empty()) {
        std::vector<std::string> ins, outs;
        for (const auto& label : pairs.alphabet().names()) {
          auto slash = label.find('/');
          if (slash == std::string::npos) throw ConfigError("label '" + label + "' is not i/o");
          auto i = label.substr(0, slash), o = label.substr(slash + 1);
          if (std::find(ins.begin(), ins.end(), i) == ins.end()) ins.push_back(i);
          if (std::find(outs.begin(), outs.end(), o) == outs.end()) outs.push_back(o);
        }
        inferred = IoAlphabet(Alphabet(ins, AlphabetKind::input),
                              Alphabet(outs, AlphabetKind::output));
      }
      IoAlphabet io = io_from_args(sut, inputs, outputs, inferred);
      result = serialize(split_io_dfa(pairs, io, name));
    }
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(in, e.what());
  }
  if (out.empty() || out == "-") {
    std::cout << result;
  } else {
    write_file(out, result);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box checking toolkit"};
  app.require_subcommand(1);

  std::string spec_format = "plain";

  auto* check_cmd = app.add_subcommand("check", "Model check a Mealy machine against specs");
  std::string check_sut;
  std::vector<std::string> check_specs;
  bool fail_on_bug = false;
  check_cmd->add_option("model", check_sut, "Mealy machine (DOT)");
  check_cmd->add_option("specs", check_specs, "Specification DFAs (DOT)");
  check_cmd->add_option("--sut", check_sut, "Mealy machine (DOT)");
  check_cmd->add_option("--spec", check_specs, "Specification DFA (DOT), repeatable");
  check_cmd->add_option("--spec-format", spec_format, "plain, bug or split-io")
      ->check(CLI::IsMember({"plain", "bug", "split-io"}));
  check_cmd->add_flag("--fail-on-bug", fail_on_bug, "Exit 1 on a violation (the default)");

  EngineArgs eng;
  auto add_engine_options = [&](CLI::App* cmd, bool with_mode) {
    cmd->add_option("--sut", eng.sut, "SUT Mealy machine (DOT)")->required();
    cmd->add_option("--spec", eng.specs, "Specification DFA (DOT), repeatable")->required();
    cmd->add_option("--spec-format", eng.spec_format, "plain, bug or split-io")
        ->check(CLI::IsMember({"plain", "bug", "split-io"}));
    cmd->add_option("--seed", eng.seed, "Random seed");
    cmd->add_option("--step-budget", eng.step_budget, "Total step budget (0 = none)");
    if (with_mode) {
      cmd->add_option("--mode", eng.mode, "bbc or learn-then-check")
          ->check(CLI::IsMember({"bbc", "learn-then-check"}));
      cmd->add_option("--max-tests", eng.max_tests, "Testing queries per round (0 = none)");
      cmd->add_option("--monitor", eng.monitor, "on or off")->check(CLI::IsMember({"on", "off"}));
      cmd->add_flag("--monitor-testing", eng.monitor_testing, "Monitor testing queries too");
      cmd->add_option("--out", eng.out, "Directory for the final hypothesis");
    }
  };
  auto* bbc_cmd = app.add_subcommand("bbc", "Run black-box checking");
  add_engine_options(bbc_cmd, true);

  auto* mbt_cmd = app.add_subcommand("mbt", "Run a standalone MBT suite per spec");
  add_engine_options(mbt_cmd, false);
  std::uint64_t mbt_tests = 1000;
  std::size_t mbt_length = 0;
  mbt_cmd->add_option("--tests", mbt_tests, "Number of tests")->check(CLI::PositiveNumber);
  mbt_cmd->add_option("--length", mbt_length, "Test length (0 = twice the spec states)");

  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment matrix from a config file");
  std::string exp_config, exp_out;
  std::uint64_t exp_seeds = 0;
  exp_cmd->add_option("config", exp_config, "key=value config file")->required();
  exp_cmd->add_option("--out", exp_out, "Output directory (overrides the config)");
  exp_cmd->add_option("--seeds", exp_seeds, "Number of seeds (overrides the config)");

  auto* conv_cmd = app.add_subcommand("convert", "Turn a bug automaton or an I×O DFA into a spec");
  bool conv_bug = false, conv_split = false;
  std::string conv_in, conv_out, conv_sut, conv_inputs, conv_outputs;
  conv_cmd->add_flag("--bug-automaton", conv_bug, "Input is a bug automaton over I ∪ O");
  conv_cmd->add_flag("--split-io", conv_split, "Input is a DFA over i/o pair labels");
  conv_cmd->add_option("input", conv_in, "Input DOT file")->required();
  conv_cmd->add_option("-o,--output", conv_out, "Output DOT file (default stdout)");
  conv_cmd->add_option("--sut", conv_sut, "Take I and O from this Mealy machine");
  conv_cmd->add_option("--inputs", conv_inputs, "Comma-separated inputs");
  conv_cmd->add_option("--outputs", conv_outputs, "Comma-separated outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) {
      if (check_sut.empty() || check_specs.empty()) {
        std::cerr << "check: need a model and at least one spec\n";
        return kUsage;
      }
      return cmd_check(check_sut, check_specs, spec_format);
    }
    if (*bbc_cmd) return cmd_bbc(eng);
    if (*mbt_cmd) return cmd_mbt(eng, mbt_tests, mbt_length);
    if (*exp_cmd) return cmd_experiment(exp_config, exp_out, exp_seeds);
    if (*conv_cmd) {
      return cmd_convert(conv_bug, conv_split, conv_in, conv_out, conv_sut, conv_inputs,
                         conv_outputs);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
