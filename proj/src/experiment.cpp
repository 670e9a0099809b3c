#include "bbckit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "bbckit/bbc.hpp"
#include "bbckit/error.hpp"
#include "bbckit/mbt.hpp"
#include "bbckit/model_checker.hpp"

namespace bbckit {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::uint64_t parse_u64(const std::string& value, std::size_t line) {
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || value.front() == '-') {
    throw ConfigError("line " + std::to_string(line) + ": expected an unsigned integer, got '" +
                      value + "'");
  }
  return v;
}

bool parse_flag(const std::string& value, std::size_t line) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": expected on or off, got '" + value + "'");
}

std::optional<SpecFormat> parse_spec_format(const std::string& name) {
  if (name == "plain") return SpecFormat::plain;
  if (name == "bug") return SpecFormat::bug_automaton;
  if (name == "split-io") return SpecFormat::split_io;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    out << static_cast<long long>(v);
  } else {
    out << std::fixed << std::setprecision(6) << v;
  }
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string opt(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

BbcConfig engine_config(const ExperimentConfig& cfg, RunMode mode, std::uint64_t seed) {
  BbcConfig c;
  c.seed = seed;
  c.conformance.seed = seed;
  c.conformance.expected_infix_length = cfg.expected_infix_length;
  c.conformance.max_tests = cfg.max_tests;
  if (!c.conformance.max_tests && cfg.step_budget) c.conformance.max_tests = 1000000;
  c.budget.max_steps = cfg.step_budget;
  c.monitor_testing = cfg.monitor_testing;
  c.monitor_enabled = mode == RunMode::bbc;
  c.mode = mode == RunMode::learn_then_check ? BbcMode::learn_then_check : BbcMode::bbc;
  return c;
}

void fill_counters(ExperimentRow& row, const QueryStats& s) {
  row.learning_queries = s.learning_queries;
  row.testing_queries = s.testing_queries;
  row.learning_steps = s.learning_steps;
  row.testing_steps = s.testing_steps;
  row.bug_step = s.bug_detection_step;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  const double m = mean(xs);
  double acc = 0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

}  // namespace

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::bbc:
      return "bbc";
    case RunMode::bbc_nomon:
      return "bbc-nomon";
    case RunMode::learn_then_check:
      return "learn-then-check";
    case RunMode::mbt:
      break;
  }
  return "mbt";
}

RunMode parse_run_mode(std::string_view name) {
  for (RunMode m : {RunMode::bbc, RunMode::bbc_nomon, RunMode::learn_then_check, RunMode::mbt}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : (base_dir / path).lexically_normal();
  };
  std::istringstream lines{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(lines, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    const std::string where = "line " + std::to_string(line) + ": ";
    if (key == "sut") {
      auto colon = value.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == value.size()) {
        throw ConfigError(where + "expected sut=<id>:<path>");
      }
      cfg.suts.push_back({trim(std::string_view(value).substr(0, colon)),
                          resolve(trim(std::string_view(value).substr(colon + 1)))});
    } else if (key == "spec") {
      auto parts = split(value, ':');
      for (auto& part : parts) part = trim(part);
      if (parts.size() < 3 || parts.size() > 4 || parts[0].empty() || parts[1].empty() ||
          parts[2].empty()) {
        throw ConfigError(where + "expected spec=<sut-id>:<property-id>:<path>[:<format>]");
      }
      ExperimentSpec spec{parts[0], parts[1], resolve(parts[2])};
      if (parts.size() == 4) {
        auto f = parse_spec_format(parts[3]);
        if (!f) throw ConfigError(where + "unknown spec format '" + parts[3] + "'");
        spec.format = *f;
      }
      cfg.specs.push_back(std::move(spec));
    } else if (key == "modes") {
      cfg.modes.clear();
      for (const auto& m : split(value, ',')) {
        try {
          cfg.modes.push_back(parse_run_mode(m));
        } catch (const ConfigError& e) {
          throw ConfigError(where + e.what());
        }
      }
    } else if (key == "seeds") {
      cfg.seeds = parse_u64(value, line);
    } else if (key == "seed_base") {
      cfg.seed_base = parse_u64(value, line);
    } else if (key == "step_budget") {
      cfg.step_budget = parse_u64(value, line);
    } else if (key == "max_tests") {
      cfg.max_tests = parse_u64(value, line);
    } else if (key == "expected_infix_length") {
      try {
        cfg.expected_infix_length = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError(where + "expected a number");
      }
      if (!(cfg.expected_infix_length > 0)) {
        throw ConfigError(where + "expected_infix_length must be positive");
      }
    } else if (key == "monitor_testing") {
      cfg.monitor_testing = parse_flag(value, line);
    } else if (key == "mbt_factor") {
      cfg.mbt_factor = parse_u64(value, line);
    } else if (key == "mbt_test_length") {
      cfg.mbt_test_length = parse_u64(value, line);
    } else if (key == "out") {
      cfg.out_dir = resolve(value);
    } else {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
  }
  if (cfg.suts.empty()) throw ConfigError("config lists no sut");
  if (cfg.modes.empty()) throw ConfigError("config lists no mode");
  if (cfg.seeds == 0) throw ConfigError("seeds must be at least 1");
  for (const auto& spec : cfg.specs) {
    auto known = std::any_of(cfg.suts.begin(), cfg.suts.end(),
                             [&](const auto& s) { return s.id == spec.sut_id; });
    if (!known) throw ConfigError("spec " + spec.id + " refers to unknown sut " + spec.sut_id);
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  return parse_experiment_config(read_file(file), file.parent_path());
}

std::vector<ExperimentRow> run_experiment_cell(const ExperimentConfig& cfg,
                                               const std::string& sut_id,
                                               const MealyMachine& sut,
                                               const SpecDfa& spec,
                                               std::uint64_t seed) {
  const bool violates = !check(sut, spec).satisfied();
  const SpecSet set{sut.io(), {spec}};
  std::optional<std::uint64_t> bbc_queries;
  std::vector<ExperimentRow> rows;
  for (RunMode mode : cfg.modes) {
    ExperimentRow row;
    row.sut = sut_id;
    row.property = spec.name();
    row.mode = mode;
    row.seed = seed;
    row.sut_violates = violates;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (mode == RunMode::mbt) {
        if (!bbc_queries) {
          Sut sizing(sut);
          bbc_queries = run_engine(sizing, set, engine_config(cfg, RunMode::bbc, seed))
                            .stats.total_queries();
        }
        Sut s(sut);
        if (cfg.step_budget) s.set_budget({cfg.step_budget, std::nullopt});
        const std::uint64_t n = std::max<std::uint64_t>(1, cfg.mbt_factor * *bbc_queries);
        MbtReport r = run_mbt_suite(spec, s, n, seed, cfg.mbt_test_length);
        fill_counters(row, r.stats);
        row.resolved = r.found ? "bug" : "no-bug";
        row.mbt_tests = r.tests_run;
      } else {
        Sut s(sut);
        BbcOutcome out = run_engine(s, set, engine_config(cfg, mode, seed));
        fill_counters(row, out.stats);
        const PropertyOutcome& p = out.properties.front();
        row.resolved = to_string(p.resolution);
        row.hypotheses = out.hypotheses;
        row.final_hyp_states = out.final_hypothesis ? out.final_hypothesis->num_states() : 0;
        row.first_violation_step = p.first_violation_step;
        row.queries_to_full_model = out.queries_to_full_model;
        row.detectable_at = p.detectable_at_queries;
        if (mode == RunMode::bbc) bbc_queries = row.total_queries();
      }
    } catch (const std::exception& e) {
      row.resolved = "error";
      row.error = e.what();
    }
    row.wall_time_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  struct Job {
    std::size_t sut, spec;
    std::uint64_t seed;
  };
  struct Loaded {
    std::optional<MealyMachine> machine;
    std::string error;
  };
  std::vector<Loaded> suts;
  for (const auto& s : cfg.suts) {
    Loaded l;
    try {
      l.machine = parse_mealy(read_file(s.path));
      if (!l.machine->is_complete()) throw ConfigError("machine is partial");
    } catch (const std::exception& e) {
      l.error = s.path.string() + ": " + e.what();
    }
    suts.push_back(std::move(l));
  }
  std::vector<std::optional<SpecDfa>> specs;
  std::vector<std::string> spec_errors;
  std::vector<std::size_t> spec_sut;
  for (const auto& sp : cfg.specs) {
    std::size_t k = 0;
    while (cfg.suts[k].id != sp.sut_id) ++k;
    spec_sut.push_back(k);
    std::optional<SpecDfa> loaded;
    std::string error;
    if (suts[k].machine) {
      try {
        loaded = spec_from_dot(read_file(sp.path), suts[k].machine->io(), sp.format, sp.id);
      } catch (const std::exception& e) {
        error = sp.path.string() + ": " + e.what();
      }
    } else {
      error = suts[k].error;
    }
    specs.push_back(std::move(loaded));
    spec_errors.push_back(std::move(error));
  }

  std::vector<Job> jobs;
  for (std::size_t sp = 0; sp < cfg.specs.size(); ++sp) {
    for (std::uint64_t k = 0; k < cfg.seeds; ++k) jobs.push_back({spec_sut[sp], sp, cfg.seed_base + k});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.sut, a.spec, a.seed) < std::tie(b.sut, b.spec, b.seed);
  });

  std::vector<std::vector<ExperimentRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      if (!specs[job.spec]) {
        for (RunMode m : cfg.modes) {
          ExperimentRow row;
          row.sut = cfg.suts[job.sut].id;
          row.property = cfg.specs[job.spec].id;
          row.mode = m;
          row.seed = job.seed;
          row.resolved = "error";
          row.error = spec_errors[job.spec];
          results[j].push_back(std::move(row));
        }
        continue;
      }
      results[j] = run_experiment_cell(cfg, cfg.suts[job.sut].id, *suts[job.sut].machine,
                                       *specs[job.spec], job.seed);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Sort post-hoc by (sut, property, mode, seed) in config order.
  struct Keyed {
    std::size_t sut, spec, mode;
    std::uint64_t seed;
    ExperimentRow row;
  };
  std::vector<Keyed> keyed;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (std::size_t m = 0; m < results[j].size(); ++m) {
      keyed.push_back({jobs[j].sut, jobs[j].spec, m, jobs[j].seed, std::move(results[j][m])});
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.sut, a.spec, a.mode, a.seed) < std::tie(b.sut, b.spec, b.mode, b.seed);
  });
  std::vector<ExperimentRow> rows;
  rows.reserve(keyed.size());
  for (auto& k : keyed) rows.push_back(std::move(k.row));
  return rows;
}

namespace {

const char* const kRowHeader[] = {
    "sut",          "property",          "mode",
    "seed",         "sut_violates",      "resolved",
    "learning_queries", "testing_queries", "learning_steps",
    "testing_steps", "hypotheses",       "final_hyp_states",
    "bug_step",     "first_violation_step", "queries_to_full_model",
    "detectable_at", "mbt_tests",        "error",
    "wall_time_ns"};

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows,
                    bool include_wall_time) {
  const std::size_t columns = std::size(kRowHeader) - (include_wall_time ? 0 : 1);
  for (std::size_t c = 0; c < columns; ++c) out << (c ? "," : "") << kRowHeader[c];
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.sut) << ',' << csv_field(r.property) << ',' << to_string(r.mode) << ','
        << r.seed << ',' << (r.sut_violates ? 1 : 0) << ',' << r.resolved << ','
        << r.learning_queries << ',' << r.testing_queries << ',' << r.learning_steps << ','
        << r.testing_steps << ',' << r.hypotheses << ',' << r.final_hyp_states << ','
        << opt(r.bug_step) << ',' << opt(r.first_violation_step) << ','
        << opt(r.queries_to_full_model) << ',' << opt(r.detectable_at) << ','
        << opt(r.mbt_tests) << ',' << csv_field(r.error);
    if (include_wall_time) out << ',' << r.wall_time_ns;
    out << '\n';
  }
}

std::vector<ExperimentRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty rows file");
  if (parse_csv_line(line).size() != std::size(kRowHeader)) {
    throw ConfigError("unexpected rows header");
  }
  std::vector<ExperimentRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto f = parse_csv_line(line);
    if (f.size() != std::size(kRowHeader)) {
      throw ConfigError("rows line " + std::to_string(n) + ": wrong column count");
    }
    auto num = [&](std::size_t k) { return parse_u64(f[k], n); };
    auto maybe = [&](std::size_t k) -> std::optional<std::uint64_t> {
      if (f[k].empty()) return std::nullopt;
      return num(k);
    };
    ExperimentRow r;
    r.sut = f[0];
    r.property = f[1];
    r.mode = parse_run_mode(f[2]);
    r.seed = num(3);
    r.sut_violates = num(4) != 0;
    r.resolved = f[5];
    r.learning_queries = num(6);
    r.testing_queries = num(7);
    r.learning_steps = num(8);
    r.testing_steps = num(9);
    r.hypotheses = num(10);
    r.final_hyp_states = num(11);
    r.bug_step = maybe(12);
    r.first_violation_step = maybe(13);
    r.queries_to_full_model = maybe(14);
    r.detectable_at = maybe(15);
    r.mbt_tests = maybe(16);
    r.error = f[17];
    r.wall_time_ns = num(18);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryEntry> summarize(const std::vector<ExperimentRow>& rows) {
  std::vector<SummaryEntry> out;
  auto emit = [&](std::string section, const std::string& sut, const std::string& prop,
                  const std::string& mode, std::string metric, double v) {
    out.push_back({std::move(section), sut, prop, mode, std::move(metric), v});
  };

  // Preserve first-appearance order of suts, properties and modes.
  std::vector<std::string> sut_order;
  std::map<std::string, std::vector<std::string>> props_of;
  std::vector<RunMode> mode_order;
  for (const auto& r : rows) {
    if (std::find(sut_order.begin(), sut_order.end(), r.sut) == sut_order.end()) {
      sut_order.push_back(r.sut);
    }
    auto& props = props_of[r.sut];
    if (std::find(props.begin(), props.end(), r.property) == props.end()) {
      props.push_back(r.property);
    }
    if (std::find(mode_order.begin(), mode_order.end(), r.mode) == mode_order.end()) {
      mode_order.push_back(r.mode);
    }
  }
  auto select = [&](const std::string& sut, const std::string& prop, RunMode mode) {
    std::map<std::uint64_t, const ExperimentRow*> by_seed;
    for (const auto& r : rows) {
      if (r.sut == sut && r.property == prop && r.mode == mode) by_seed[r.seed] = &r;
    }
    return by_seed;
  };
  auto found = [](const ExperimentRow& r) { return r.resolved == "bug"; };

  for (const auto& sut : sut_order) {
    for (const auto& prop : props_of[sut]) {
      for (RunMode mode : mode_order) {
        auto cell = select(sut, prop, mode);
        if (cell.empty()) continue;
        const std::string m = to_string(mode);
        std::vector<double> q, st, lq, tq, hyp, hs, bug;
        std::size_t bugs = 0, nobugs = 0, unres = 0, errors = 0;
        for (const auto& [seed, r] : cell) {
          if (r->resolved == "error") {
            ++errors;
            continue;
          }
          bugs += found(*r);
          nobugs += r->resolved == "no-bug";
          unres += r->resolved == "unresolved";
          q.push_back(static_cast<double>(r->total_queries()));
          st.push_back(static_cast<double>(r->total_steps()));
          lq.push_back(static_cast<double>(r->learning_queries));
          tq.push_back(static_cast<double>(r->testing_queries));
          hyp.push_back(static_cast<double>(r->hypotheses));
          hs.push_back(static_cast<double>(r->final_hyp_states));
          if (r->bug_step) bug.push_back(static_cast<double>(*r->bug_step));
        }
        emit("cell", sut, prop, m, "runs", static_cast<double>(cell.size()));
        emit("cell", sut, prop, m, "bug", static_cast<double>(bugs));
        emit("cell", sut, prop, m, "no_bug", static_cast<double>(nobugs));
        emit("cell", sut, prop, m, "unresolved", static_cast<double>(unres));
        emit("cell", sut, prop, m, "errors", static_cast<double>(errors));
        emit("cell", sut, prop, m, "total_queries_mean", mean(q));
        emit("cell", sut, prop, m, "total_queries_sd", sample_sd(q));
        emit("cell", sut, prop, m, "total_steps_mean", mean(st));
        emit("cell", sut, prop, m, "total_steps_sd", sample_sd(st));
        emit("cell", sut, prop, m, "learning_queries_mean", mean(lq));
        emit("cell", sut, prop, m, "testing_queries_mean", mean(tq));
        emit("cell", sut, prop, m, "hypotheses_mean", mean(hyp));
        emit("cell", sut, prop, m, "final_hyp_states_mean", mean(hs));
        emit("cell", sut, prop, m, "bug_step_mean", mean(bug));
      }
    }

    // f/c/t per sut and mode.
    for (RunMode mode : mode_order) {
      std::size_t f_all = 0, f_any = 0, c = 0, t = 0;
      for (const auto& prop : props_of[sut]) {
        auto cell = select(sut, prop, mode);
        if (cell.empty()) continue;
        ++t;
        c += cell.begin()->second->sut_violates;
        bool all = true, any = false;
        for (const auto& [seed, r] : cell) {
          all = all && found(*r);
          any = any || found(*r);
        }
        f_all += all;
        f_any += any;
      }
      if (t == 0) continue;
      const std::string m = to_string(mode);
      emit("fct", sut, "", m, "f", static_cast<double>(f_all));
      emit("fct", sut, "", m, "f_any", static_cast<double>(f_any));
      emit("fct", sut, "", m, "c", static_cast<double>(c));
      emit("fct", sut, "", m, "t", static_cast<double>(t));
    }

    for (const auto& prop : props_of[sut]) {
      auto bbc = select(sut, prop, RunMode::bbc);
      // Monitored against unmonitored BBC on the same seeds.
      auto nomon = select(sut, prop, RunMode::bbc_nomon);
      if (!bbc.empty() && !nomon.empty()) {
        double sum_mon = 0, sum_nomon = 0;
        std::size_t pairs = 0, dom_pairs = 0, dom_ok = 0;
        for (const auto& [seed, r] : bbc) {
          auto it = nomon.find(seed);
          if (it == nomon.end() || r->resolved == "error" || it->second->resolved == "error") {
            continue;
          }
          ++pairs;
          sum_mon += static_cast<double>(r->total_queries());
          sum_nomon += static_cast<double>(it->second->total_queries());
          if (it->second->first_violation_step) {
            ++dom_pairs;
            dom_ok += r->bug_step && *r->bug_step <= *it->second->first_violation_step;
          }
        }
        emit("monitor", sut, prop, "", "pairs", static_cast<double>(pairs));
        emit("monitor", sut, prop, "", "queries_pct_of_unmonitored",
             sum_nomon > 0 ? 100.0 * sum_mon / sum_nomon : 0);
        emit("monitor", sut, prop, "", "dominance_pairs", static_cast<double>(dom_pairs));
        emit("monitor", sut, prop, "", "dominance_ok", static_cast<double>(dom_ok));
      }
      // BBC total queries as a share of the queries learn-then-check needed
      // to learn the full model.
      auto ltc = select(sut, prop, RunMode::learn_then_check);
      if (!bbc.empty() && !ltc.empty()) {
        std::vector<double> ratios;
        std::size_t bbc_found = 0, ltc_found = 0;
        for (const auto& [seed, r] : bbc) {
          auto it = ltc.find(seed);
          if (it == ltc.end() || r->resolved == "error" || it->second->resolved == "error") {
            continue;
          }
          bbc_found += found(*r);
          ltc_found += found(*it->second);
          const double denom = static_cast<double>(
              it->second->queries_to_full_model.value_or(it->second->total_queries()));
          if (denom > 0) ratios.push_back(static_cast<double>(r->total_queries()) / denom);
        }
        emit("baseline", sut, prop, "", "pairs", static_cast<double>(ratios.size()));
        emit("baseline", sut, prop, "", "bbc_found", static_cast<double>(bbc_found));
        emit("baseline", sut, prop, "", "ltc_found", static_cast<double>(ltc_found));
        emit("baseline", sut, prop, "", "median_ratio", median(ratios));
        emit("baseline", sut, prop, "", "mean_pct", 100.0 * mean(ratios));
      }
      // BBC against standalone MBT.
      auto mbt = select(sut, prop, RunMode::mbt);
      if (!bbc.empty() && !mbt.empty()) {
        std::size_t pairs = 0, bbc_found = 0, mbt_found = 0;
        for (const auto& [seed, r] : bbc) {
          auto it = mbt.find(seed);
          if (it == mbt.end()) continue;
          ++pairs;
          bbc_found += found(*r);
          mbt_found += found(*it->second);
        }
        emit("mbt", sut, prop, "", "pairs", static_cast<double>(pairs));
        emit("mbt", sut, prop, "", "bbc_found", static_cast<double>(bbc_found));
        emit("mbt", sut, prop, "", "mbt_found", static_cast<double>(mbt_found));
      }
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryEntry>& entries) {
  out << "section,sut,property,mode,metric,value\n";
  for (const auto& e : entries) {
    out << e.section << ',' << csv_field(e.sut) << ',' << csv_field(e.property) << ','
        << e.mode << ',' << e.metric << ',' << format_number(e.value) << '\n';
  }
}

unsigned default_workers() {
  if (const char* env = std::getenv("BBCKIT_WORKERS")) {
    try {
      unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace bbckit
