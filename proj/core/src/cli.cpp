#include "eser/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "eser/bench.hpp"
#include "eser/generators.hpp"
#include "eser/parser.hpp"
#include "eser/report.hpp"

namespace eser {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EngineKind engine_or_throw(const std::string& name) {
  const auto e = parse_engine(name);
  if (!e) throw UsageError("unknown engine '" + name + "' (expected std, cbj, cbj-i or dbt)");
  return *e;
}

Branching branching_or_throw(const std::string& name) {
  if (name == "mindom") return Branching::MinDom;
  if (name == "input") return Branching::Input;
  throw UsageError("unknown branching '" + name + "' (expected mindom or input)");
}

std::optional<std::int64_t> timeout_of(std::int64_t ms) {
  if (ms < 0) throw UsageError("timeout must be non-negative");
  if (ms == 0) return std::nullopt;
  return ms;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-domain solver with explanation-driven backtracking", "eser"};
  app.require_subcommand(1);

  std::string file, engine = "std", branching = "mindom", format = "human";
  bool all = false;
  std::int64_t timeout = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a model file");
  solve_cmd->add_option("file", file, "Model file")->required();
  solve_cmd->add_option("--engine", engine, "std, cbj, cbj-i or dbt");
  solve_cmd->add_flag("--all", all, "Enumerate all solutions (std only)");
  solve_cmd->add_option("--timeout", timeout, "Time limit in ms, 0 for none");
  solve_cmd->add_option("--branching", branching, "mindom or input");
  solve_cmd->add_option("--format", format, "json, csv or human");

  std::string spec, out_file;
  auto* gen_cmd = app.add_subcommand("gen", "Print a generated model");
  gen_cmd->add_option("spec", spec, "queens:N, pigeon:P,H,K, randcsp:N,D,P1,P2[,SEED] or color:FILE,K")->required();
  gen_cmd->add_option("-o,--out", out_file, "Write to FILE instead of standard output");

  std::vector<std::string> inputs;
  std::string engines = "std,cbj,cbj-i,dbt", report_file;
  std::int64_t bench_timeout = 0;
  unsigned jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run every engine on every instance");
  bench_cmd->add_option("inputs", inputs, "Directories, model files or generator specs")->required();
  bench_cmd->add_option("--engines", engines, "Comma-separated engine list");
  bench_cmd->add_option("--timeout", bench_timeout, "Time limit per run in ms, 0 for none");
  bench_cmd->add_option("--out", report_file, "CSV report file (standard output if absent)");
  bench_cmd->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"eser"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "eser: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve_cmd) {
      SearchOptions so;
      so.engine = engine_or_throw(engine);
      so.branching = branching_or_throw(branching);
      so.timeout_ms = timeout_of(timeout);
      if (format != "json" && format != "csv" && format != "human")
        throw UsageError("unknown format '" + format + "' (expected json, csv or human)");
      std::ifstream in(file);
      if (!in) throw UsageError("cannot open " + file);
      std::stringstream buf;
      buf << in.rdbuf();
      Model m;
      try {
        m = parse_model(buf.str());
      } catch (const ParseError& e) {
        err << file << ':' << e.what() << '\n';
        return kExitParse;
      }
      so.goal = all || m.goal == Goal::All ? SearchGoal::All : SearchGoal::First;
      if (so.goal == SearchGoal::All && so.engine != EngineKind::Std)
        throw UsageError("enumerating all solutions needs --engine std");
      so.keep_solutions = 1;
      const RunReport rep = make_report(file, so.engine, solve(m, so));
      if (format == "json")
        out << to_json(rep) << '\n';
      else if (format == "csv")
        out << csv_header() << '\n' << to_csv(rep) << '\n';
      else
        out << to_human(rep, &m);
      return kExitOk;
    }

    if (*gen_cmd) {
      const std::string text = print_model(generate(spec));
      if (out_file.empty()) {
        out << text;
      } else {
        std::ofstream f(out_file);
        if (!f) throw UsageError("cannot write " + out_file);
        f << text;
      }
      return kExitOk;
    }

    BenchOptions bo;
    std::stringstream list(engines);
    for (std::string name; std::getline(list, name, ',');)
      if (!name.empty()) bo.engines.push_back(engine_or_throw(name));
    if (bo.engines.empty()) throw UsageError("--engines is empty");
    bo.timeout_ms = timeout_of(bench_timeout);
    bo.jobs = jobs;
    std::vector<BenchInstance> instances;
    try {
      instances = load_instances(inputs);
    } catch (const ParseError& e) {
      err << e.what() << '\n';
      return kExitParse;
    }
    const auto reports = run_bench(instances, bo);
    std::ostringstream csv;
    csv << csv_header() << '\n';
    for (const auto& r : reports) csv << to_csv(r) << '\n';
    if (report_file.empty()) {
      out << csv.str();
    } else {
      std::ofstream f(report_file);
      if (!f) throw UsageError("cannot write " + report_file);
      f << csv.str();
    }
    out << bench_summary(reports, bo.engines);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "eser: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "eser: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace eser
