#include "eser/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eser {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(std::string_view row) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\n' && c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV row");
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T parse_num(const std::string& s, const char* field) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument(std::string("bad value for ") + field + ": '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("bad boolean '" + s + "'");
}

}  // namespace

bool RunReport::operator==(const RunReport& o) const {
  const auto& a = stats;
  const auto& b = o.stats;
  return instance == o.instance && engine == o.engine && status == o.status && a.nodes == b.nodes &&
         a.fails == b.fails && a.backjumps == b.backjumps && a.max_jump == b.max_jump &&
         a.peak_depth == b.peak_depth && a.solutions == b.solutions && a.elapsed_ms == b.elapsed_ms &&
         a.timed_out == b.timed_out && solution == o.solution;
}

std::optional<Status> parse_status(std::string_view s) {
  if (s == "SAT") return Status::Sat;
  if (s == "UNSAT") return Status::Unsat;
  if (s == "UNKNOWN") return Status::Unknown;
  return std::nullopt;
}

RunReport make_report(std::string instance, EngineKind engine, const SearchResult& r) {
  RunReport rep;
  rep.instance = std::move(instance);
  rep.engine = to_string(engine);
  rep.status = r.status;
  rep.stats = r.stats;
  rep.stats.elapsed_ms = std::round(r.stats.elapsed_ms * 1000.0) / 1000.0;
  if (!r.solutions.empty()) rep.solution = r.solutions.front();
  return rep;
}

const std::string& csv_header() {
  static const std::string h =
      "instance,engine,status,nodes,fails,backjumps,max_jump,peak_depth,solutions,elapsed_ms,timed_out";
  return h;
}

std::string to_csv(const RunReport& r) {
  const auto& s = r.stats;
  std::ostringstream os;
  os << csv_field(r.instance) << ',' << csv_field(r.engine) << ',' << to_string(r.status) << ',' << s.nodes << ','
     << s.fails << ',' << s.backjumps << ',' << s.max_jump << ',' << s.peak_depth << ',' << s.solutions << ','
     << fmt_double(s.elapsed_ms) << ',' << (s.timed_out ? "true" : "false");
  return os.str();
}

RunReport from_csv(std::string_view row) {
  const auto f = split_csv(row);
  if (f.size() != 11) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected 11");
  RunReport r;
  r.instance = f[0];
  r.engine = f[1];
  const auto st = parse_status(f[2]);
  if (!st) throw std::invalid_argument("bad status '" + f[2] + "'");
  r.status = *st;
  r.stats.nodes = parse_num<std::uint64_t>(f[3], "nodes");
  r.stats.fails = parse_num<std::uint64_t>(f[4], "fails");
  r.stats.backjumps = parse_num<std::uint64_t>(f[5], "backjumps");
  r.stats.max_jump = parse_num<std::uint64_t>(f[6], "max_jump");
  r.stats.peak_depth = parse_num<std::uint64_t>(f[7], "peak_depth");
  r.stats.solutions = parse_num<std::uint64_t>(f[8], "solutions");
  r.stats.elapsed_ms = parse_num<double>(f[9], "elapsed_ms");
  r.stats.timed_out = parse_bool(f[10]);
  return r;
}

std::string to_json(const RunReport& r) {
  // ordered_json keeps the CSV field order.
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["engine"] = r.engine;
  j["status"] = to_string(r.status);
  j["nodes"] = r.stats.nodes;
  j["fails"] = r.stats.fails;
  j["backjumps"] = r.stats.backjumps;
  j["max_jump"] = r.stats.max_jump;
  j["peak_depth"] = r.stats.peak_depth;
  j["solutions"] = r.stats.solutions;
  j["elapsed_ms"] = r.stats.elapsed_ms;
  j["timed_out"] = r.stats.timed_out;
  if (r.solution) j["solution"] = *r.solution;
  return j.dump();
}

RunReport from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  RunReport r;
  r.instance = j.at("instance").get<std::string>();
  r.engine = j.at("engine").get<std::string>();
  const auto st = parse_status(j.at("status").get<std::string>());
  if (!st) throw std::invalid_argument("bad status in JSON report");
  r.status = *st;
  r.stats.nodes = j.at("nodes").get<std::uint64_t>();
  r.stats.fails = j.at("fails").get<std::uint64_t>();
  r.stats.backjumps = j.at("backjumps").get<std::uint64_t>();
  r.stats.max_jump = j.at("max_jump").get<std::uint64_t>();
  r.stats.peak_depth = j.at("peak_depth").get<std::uint64_t>();
  r.stats.solutions = j.at("solutions").get<std::uint64_t>();
  r.stats.elapsed_ms = j.at("elapsed_ms").get<double>();
  r.stats.timed_out = j.at("timed_out").get<bool>();
  if (j.contains("solution")) r.solution = j["solution"].get<std::vector<int>>();
  return r;
}

std::string to_human(const RunReport& r, const Model* model) {
  const auto& s = r.stats;
  std::ostringstream os;
  os << r.instance << " [" << r.engine << "]: " << to_string(r.status) << (s.timed_out ? " (timeout)" : "") << '\n'
     << "  nodes " << s.nodes << ", fails " << s.fails << ", backjumps " << s.backjumps << ", max jump "
     << s.max_jump << ", peak depth " << s.peak_depth << ", solutions " << s.solutions << ", "
     << fmt_double(s.elapsed_ms) << " ms\n";
  if (r.solution) {
    os << " ";
    for (std::size_t i = 0; i < r.solution->size(); ++i) {
      os << ' ';
      if (model && i < model->vars.size()) os << model->vars[i].name << '=';
      os << (*r.solution)[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace eser
