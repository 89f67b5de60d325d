#include "eser/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eser/random.hpp"

namespace eser {

Model gen_queens(int n) {
  if (n < 1) throw std::invalid_argument("queens: n must be positive");
  Model m;
  m.name = "queens-" + std::to_string(n);
  std::vector<int> q;
  for (int i = 1; i <= n; ++i) q.push_back(m.add_range("q" + std::to_string(i), 1, n));
  if (n > 1) m.constraints.push_back(ConstraintSpec::alldifferent(q));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m.constraints.push_back(ConstraintSpec::neq(q[i], q[j], j - i));
      m.constraints.push_back(ConstraintSpec::neq(q[i], q[j], i - j));
    }
  return m;
}

Model gen_pigeonhole(int pigeons, int holes, int padding) {
  if (pigeons < 1 || holes < 1 || padding < 0) throw std::invalid_argument("pigeon: invalid parameters");
  Model m;
  m.name = "pigeon-" + std::to_string(pigeons) + "-" + std::to_string(holes) + "-" + std::to_string(padding);
  // Declarations interleave p1, pad1, p2, pad2, ... so input order mixes them.
  std::vector<int> pads, p;
  for (int i = 1; i <= std::max(pigeons, padding); ++i) {
    if (i <= pigeons) p.push_back(m.add_range("p" + std::to_string(i), 1, holes));
    if (i <= padding) pads.push_back(m.add_range("pad" + std::to_string(i), 0, 1));
  }
  // x <= y + 1 never prunes on 0/1 domains.
  for (std::size_t k = 1; k < pads.size(); ++k) m.constraints.push_back(ConstraintSpec::leq(pads[k - 1], pads[k], 1));
  if (pigeons > 1) m.constraints.push_back(ConstraintSpec::alldifferent(p));
  return m;
}

Model gen_coloring(std::string_view dimacs, int k) {
  if (k < 1) throw std::invalid_argument("color: k must be positive");
  std::istringstream in{std::string(dimacs)};
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      int m = 0;
      if (!(ls >> fmt >> n >> m) || n < 1) throw std::invalid_argument("color: bad problem line");
    } else if (tag == "e") {
      int u = 0, v = 0;
      if (!(ls >> u >> v)) throw std::invalid_argument("color: bad edge line");
      edges.emplace_back(u, v);
    }
  }
  if (n < 1) throw std::invalid_argument("color: missing 'p edge' line");
  Model m;
  m.name = "color-" + std::to_string(n) + "-" + std::to_string(k);
  for (int i = 1; i <= n; ++i) m.add_range("c" + std::to_string(i), 1, k);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n) throw std::invalid_argument("color: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("color: self loop");
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) m.constraints.push_back(ConstraintSpec::neq(u - 1, v - 1, 0));
  }
  return m;
}

Model gen_randcsp(int n, int d, double p1, double p2, std::uint64_t seed) {
  if (n < 1 || d < 1 || !(p1 >= 0 && p1 <= 1) || !(p2 >= 0 && p2 <= 1))
    throw std::invalid_argument("randcsp: invalid parameters");
  Model m;
  std::ostringstream name;
  name << "randcsp-" << n << '-' << d << '-' << p1 << '-' << p2 << '-' << seed;
  m.name = name.str();
  for (int i = 0; i < n; ++i) m.add_range("x" + std::to_string(i), 0, d - 1);

  Rng rng(seed);
  Rng pair_rng = rng.split(1);
  Rng tuple_rng = rng.split(2);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const auto num_pairs = static_cast<std::size_t>(std::ceil(p1 * static_cast<double>(pairs.size())));
  const auto dd = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const auto num_tuples = static_cast<std::size_t>(std::ceil(p2 * static_cast<double>(dd)));

  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  auto sample = [](auto& items, std::size_t k, Rng& r) {
    for (std::size_t i = 0; i < k; ++i) std::swap(items[i], items[i + r.below(items.size() - i)]);
  };
  sample(pairs, num_pairs, pair_rng);
  std::vector<std::pair<int, int>> all_tuples;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) all_tuples.emplace_back(a, b);
  for (std::size_t c = 0; c < num_pairs; ++c) {
    auto tuples = all_tuples;
    sample(tuples, num_tuples, tuple_rng);
    tuples.resize(num_tuples);
    std::sort(tuples.begin(), tuples.end());
    m.constraints.push_back(ConstraintSpec::forbidden(pairs[c].first, pairs[c].second, std::move(tuples)));
  }
  return m;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ESER_SEED")) {
    std::uint64_t v = 0;
    const std::string_view sv(s);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec == std::errc() && ptr == sv.data() + sv.size()) return v;
  }
  return 1;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto p = s.find(sep, start);
    out.emplace_back(s.substr(start, p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

template <class T>
T number(const std::string& s, std::string_view spec) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad number '" + s + "' in generator spec '" + std::string(spec) + "'");
  return v;
}

}  // namespace

Model generate(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("generator spec needs KIND:ARGS: " + std::string(spec));
  const std::string_view kind = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw std::invalid_argument("wrong number of arguments in generator spec '" + std::string(spec) + "'");
  };
  Model m;
  if (kind == "queens") {
    need(1, 1);
    m = gen_queens(number<int>(args[0], spec));
  } else if (kind == "pigeon") {
    need(2, 3);
    m = gen_pigeonhole(number<int>(args[0], spec), number<int>(args[1], spec),
                       args.size() > 2 ? number<int>(args[2], spec) : 0);
  } else if (kind == "randcsp") {
    need(4, 5);
    m = gen_randcsp(number<int>(args[0], spec), number<int>(args[1], spec), number<double>(args[2], spec),
                    number<double>(args[3], spec),
                    args.size() > 4 ? number<std::uint64_t>(args[4], spec) : default_seed());
  } else if (kind == "color") {
    need(2, 2);
    std::ifstream f(args[0]);
    if (!f) throw std::invalid_argument("cannot open graph file " + args[0]);
    std::stringstream buf;
    buf << f.rdbuf();
    m = gen_coloring(buf.str(), number<int>(args[1], spec));
  } else {
    throw std::invalid_argument("unknown generator '" + std::string(kind) + "'");
  }
  m.name = std::string(spec);
  return m;
}

}  // namespace eser
