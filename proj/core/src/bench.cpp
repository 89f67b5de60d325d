#include "eser/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eser/generators.hpp"
#include "eser/parser.hpp"

namespace eser {

namespace fs = std::filesystem;

namespace {

Model read_model(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::invalid_argument("cannot open " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), p.string() + ": " + e.message());
  }
}

}  // namespace

std::vector<BenchInstance> load_instances(const std::vector<std::string>& inputs) {
  std::vector<BenchInstance> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    const fs::path p(in);
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".mod") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back({f.filename().string(), read_model(f)});
    } else if (fs::is_regular_file(p, ec)) {
      out.push_back({p.filename().string(), read_model(p)});
    } else if (in.find(':') != std::string::npos) {
      out.push_back({in, generate(in)});
    } else {
      throw std::invalid_argument("no such file, directory or generator spec: " + in);
    }
  }
  return out;
}

std::vector<RunReport> run_bench(const std::vector<BenchInstance>& instances, const BenchOptions& options) {
  const std::size_t ne = options.engines.size();
  const std::size_t cells = instances.size() * ne;
  std::vector<RunReport> reports(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const auto& inst = instances[c / ne];
      SearchOptions so;
      so.engine = options.engines[c % ne];
      so.branching = options.branching;
      so.goal = SearchGoal::First;
      so.timeout_ms = options.timeout_ms;
      so.keep_solutions = 1;
      reports[c] = make_report(inst.name, so.engine, solve(inst.model, so));
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(cells, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

std::string bench_summary(const std::vector<RunReport>& reports, const std::vector<EngineKind>& engines) {
  // instance -> engine -> report
  std::map<std::string, std::map<std::string, const RunReport*>> by;
  for (const auto& r : reports) by[r.instance][r.engine] = &r;
  auto solved = [](const RunReport* r) { return r && r->status != Status::Unknown; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  for (EngineKind e : engines) {
    const std::string name = to_string(e);
    std::size_t n = 0, ok = 0;
    double nodes = 0;
    for (const auto& [inst, row] : by) {
      auto it = row.find(name);
      if (it == row.end()) continue;
      ++n;
      nodes += static_cast<double>(it->second->stats.nodes);
      if (solved(it->second)) ++ok;
    }
    os << "engine " << name << ": solved " << ok << '/' << n << ", mean nodes " << (n ? nodes / n : 0.0) << '\n';
  }

  // Geometric mean of B/A over instances both engines solved: values above 1
  // mean the row engine A is faster.
  if (engines.size() > 1) {
    os << "speedup (row vs column; geometric mean of nodes ratio, time ratio; instances won by row)\n";
    for (EngineKind a : engines) {
      for (EngineKind b : engines) {
        if (a == b) continue;
        double log_nodes = 0, log_time = 0;
        std::size_t common = 0, wins = 0;
        for (const auto& [inst, row] : by) {
          auto ia = row.find(to_string(a));
          auto ib = row.find(to_string(b));
          if (ia == row.end() || ib == row.end() || !solved(ia->second) || !solved(ib->second)) continue;
          const auto& sa = ia->second->stats;
          const auto& sb = ib->second->stats;
          ++common;
          log_nodes += std::log(std::max<double>(1, sb.nodes) / std::max<double>(1, sa.nodes));
          log_time += std::log(std::max(0.001, sb.elapsed_ms) / std::max(0.001, sa.elapsed_ms));
          if (sa.elapsed_ms < sb.elapsed_ms) ++wins;
        }
        os << "  " << to_string(a) << " vs " << to_string(b) << ": ";
        if (common == 0) {
          os << "no common solved instances\n";
        } else {
          os << "nodes x" << std::exp(log_nodes / common) << ", time x" << std::exp(log_time / common) << ", wins "
             << wins << '/' << common << '\n';
        }
      }
    }
  }
  return os.str();
}

}  // namespace eser
