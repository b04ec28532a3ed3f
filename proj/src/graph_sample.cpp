#include "gml/graph_sample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gml {

namespace {

std::uint64_t pair_key(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + j;
}

}  // namespace

std::string model_name(GraphModel m) {
  return m == GraphModel::erdos_renyi ? "er" : "reg";
}

GraphModel model_from_name(const std::string& name) {
  if (name == "er" || name == "erdos_renyi") return GraphModel::erdos_renyi;
  if (name == "reg" || name == "regular" || name == "d_regular") return GraphModel::d_regular;
  throw std::invalid_argument("unknown model: " + name);
}

CharacterTable CharacterTable::for_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
  return CharacterTable{p, std::sqrt((1.0 - p) / p), -std::sqrt(p / (1.0 - p))};
}

bool GraphSample::has_edge(int i, int j) const {
  if (i == j) return false;
  return edge_keys_.count(pair_key(n, i, j)) > 0;
}

void GraphSample::finalize() {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edge_keys_.clear();
  edge_keys_.reserve(edges.size() * 2);
  degrees_.assign(n, 0);
  for (auto [a, b] : edges) {
    edge_keys_.insert(pair_key(n, a, b));
    degrees_[a]++;
    degrees_[b]++;
  }
}

GraphSample sample_er(int n, double d, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(d > 0 && d < n)) throw std::invalid_argument("need 0 < d < n so that p in (0,1)");
  GraphSample g;
  g.n = n;
  g.model = GraphModel::erdos_renyi;
  g.d = d;
  g.seed = seed;
  const double p = d / n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unif(rng) < p) g.edges.emplace_back(i, j);
  g.finalize();
  return g;
}

GraphSample sample_regular(int n, int d, std::uint64_t seed, long long swaps) {
  if (!(d > 0 && d < n)) throw std::invalid_argument("need 0 < d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("n*d must be even for a d-regular graph");

  GraphSample g;
  g.n = n;
  g.model = GraphModel::d_regular;
  g.d = d;
  g.seed = seed;

  // Deterministic circulant start: i ~ i±1..i±floor(d/2), plus antipode when d odd.
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= d / 2; ++k) {
      int j = (i + k) % n;
      g.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    if (d % 2 == 1) {
      int j = (i + n / 2) % n;
      if (i < j) g.edges.emplace_back(i, j);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.finalize();
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != d) throw std::logic_error("circulant construction broke regularity");

  if (swaps < 0) swaps = 100LL * n * d;
  const long long max_attempts = 50LL * std::max<long long>(swaps, 1);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.edges.size() - 1);
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(g.edges.size() * 2);
  for (auto [a, b] : g.edges) keys.insert(pair_key(n, a, b));

  long long accepted = 0, attempts = 0;
  while (accepted < swaps && attempts < max_attempts) {
    ++attempts;
    std::size_t e1 = pick(rng), e2 = pick(rng);
    if (e1 == e2) continue;
    auto [a, b] = g.edges[e1];
    auto [c, dd] = g.edges[e2];
    if (rng() & 1) std::swap(c, dd);
    // {a,b},{c,dd} -> {a,c},{b,dd}; endpoints must stay distinct and new edges fresh
    if (a == c || a == dd || b == c || b == dd) continue;
    if (keys.count(pair_key(n, a, c)) || keys.count(pair_key(n, b, dd))) continue;
    keys.erase(pair_key(n, a, b));
    keys.erase(pair_key(n, c, dd));
    keys.insert(pair_key(n, a, c));
    keys.insert(pair_key(n, b, dd));
    g.edges[e1] = {std::min(a, c), std::max(a, c)};
    g.edges[e2] = {std::min(b, dd), std::max(b, dd)};
    ++accepted;
  }
  g.finalize();
  return g;
}

namespace {

void enumerate_regular_rec(int n, int d, std::vector<int>& residual,
                           std::vector<std::vector<bool>>& adj,
                           std::vector<std::pair<int, int>>& edges,
                           std::vector<GraphSample>& out) {
  int v = -1;
  for (int i = 0; i < n; ++i)
    if (residual[i] > 0) {
      v = i;
      break;
    }
  if (v < 0) {
    GraphSample g;
    g.n = n;
    g.model = GraphModel::d_regular;
    g.d = d;
    g.seed = out.size();
    g.edges = edges;
    g.finalize();
    out.push_back(std::move(g));
    return;
  }
  // Complete v's adjacency in one step: choose residual[v] partners above v.
  std::vector<int> cands;
  for (int u = v + 1; u < n; ++u)
    if (residual[u] > 0 && !adj[v][u]) cands.push_back(u);
  int need = residual[v];
  if (static_cast<int>(cands.size()) < need) return;
  std::vector<int> choice(need);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == need) {
      for (int i = 0; i < need; ++i) {
        int u = choice[i];
        adj[v][u] = adj[u][v] = true;
        residual[u]--;
        edges.emplace_back(v, u);
      }
      residual[v] = 0;
      enumerate_regular_rec(n, d, residual, adj, edges, out);
      residual[v] = need;
      for (int i = 0; i < need; ++i) {
        int u = choice[i];
        adj[v][u] = adj[u][v] = false;
        residual[u]++;
        edges.pop_back();
      }
      return;
    }
    for (std::size_t c = start; c < cands.size(); ++c) {
      choice[depth] = cands[c];
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::vector<GraphSample> enumerate_regular(int n, int d) {
  if (n > 10) throw std::invalid_argument("enumerate_regular: n > 10 infeasible");
  if (n < 1 || d < 0 || d >= n) throw std::invalid_argument("enumerate_regular: bad n, d");
  std::vector<GraphSample> out;
  if ((static_cast<long long>(n) * d) % 2 != 0) return out;  // parity: empty list
  std::vector<int> residual(n, d);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  std::vector<std::pair<int, int>> edges;
  enumerate_regular_rec(n, d, residual, adj, edges, out);
  return out;
}

double chi(const GraphSample& g, int i, int j) {
  if (i == j) throw std::invalid_argument("chi: self-loop pair");
  if (i < 0 || j < 0 || i >= g.n || j >= g.n)
    throw std::invalid_argument("chi: vertex out of range");
  auto t = g.chars();
  return g.has_edge(i, j) ? t.chi_present : t.chi_absent;
}

double chi_set(const GraphSample& g, const std::vector<std::pair<int, int>>& s) {
  double prod = 1.0;
  for (auto [i, j] : s) prod *= chi(g, i, j);
  return prod;
}

ExactErEnsemble::ExactErEnsemble(int n, double p) {
  if (n > 6) throw std::invalid_argument("ExactErEnsemble: n > 6 infeasible");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must be in (0,1)");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t m = pairs.size();
  samples_.reserve(1u << m);
  weights_.reserve(1u << m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    GraphSample g;
    g.n = n;
    g.model = GraphModel::erdos_renyi;
    g.d = p * n;
    g.seed = mask;
    int cnt = 0;
    for (std::size_t e = 0; e < m; ++e)
      if (mask & (1u << e)) {
        g.edges.push_back(pairs[e]);
        ++cnt;
      }
    g.finalize();
    samples_.push_back(std::move(g));
    weights_.push_back(std::pow(p, cnt) * std::pow(1.0 - p, static_cast<int>(m) - cnt));
  }
}

double ExactErEnsemble::expectation(
    const std::function<double(const GraphSample&)>& stat) const {
  double acc = 0;
  for (std::size_t i = 0; i < samples_.size(); ++i) acc += weights_[i] * stat(samples_[i]);
  return acc;
}

double exact_expectation_er(int n, double p,
                            const std::function<double(const GraphSample&)>& stat) {
  return ExactErEnsemble(n, p).expectation(stat);
}

double exact_expectation_regular(int n, int d,
                                 const std::function<double(const GraphSample&)>& stat) {
  auto all = enumerate_regular(n, d);
  if (all.empty()) throw std::invalid_argument("no d-regular graphs for these n, d");
  double acc = 0;
  for (const auto& g : all) acc += stat(g);
  return acc / static_cast<double>(all.size());
}

std::string serialize_graph(const GraphSample& g) {
  std::ostringstream out;
  out << g.n << " " << g.d << " " << model_name(g.model) << " " << g.seed << "\n";
  for (auto [a, b] : g.edges) out << a << " " << b << "\n";
  return out.str();
}

GraphSample parse_graph(const std::string& text) {
  std::istringstream in(text);
  GraphSample g;
  std::string model;
  if (!(in >> g.n >> g.d >> model >> g.seed))
    throw std::invalid_argument("bad graph header");
  g.model = model_from_name(model);
  int a, b;
  while (in >> a >> b) g.edges.emplace_back(a, b);
  g.finalize();
  return g;
}

}  // namespace gml
