#include "gml/sos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "gml/contraction.hpp"
#include "gml/report.hpp"

namespace gml {

DvRule DvRule::paper_default(int dsos, int n) {
  return absolute(static_cast<int>(std::ceil(dsos * std::log(static_cast<double>(n)))));
}

Eigen::MatrixXd signed_weight_matrix(const GraphSample& g) {
  const double p = g.p();
  const double absent = p / (1.0 - p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(g.n, g.n, absent);
  for (auto [i, j] : g.edges) {
    w(i, j) = -1.0;
    w(j, i) = -1.0;
  }
  w.diagonal().setZero();
  return w;
}

namespace {

void check_anchor_set(const GraphSample& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= g.n) throw std::invalid_argument("anchor vertex out of range");
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j]) throw std::invalid_argument("anchor set has duplicates");
  }
}

// ---- anchored configurations: edge sets over (anchors + extras) slots with no
// anchor-anchor pairs, every extra covered, every component touching an anchor.

struct AnchoredConfig {
  int extras = 0;
  std::vector<std::pair<int, int>> edges;  // slots: anchors 0..a-1, extras a..a+t-1
};

std::vector<AnchoredConfig> enumerate_anchored_configs(int anchors, int extras) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < anchors; ++a)
    for (int e = anchors; e < anchors + extras; ++e) pairs.emplace_back(a, e);
  for (int e1 = anchors; e1 < anchors + extras; ++e1)
    for (int e2 = e1 + 1; e2 < anchors + extras; ++e2) pairs.emplace_back(e1, e2);

  const int m = static_cast<int>(pairs.size());
  const int slots = anchors + extras;
  std::vector<AnchoredConfig> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> parent(slots);
    for (int i = 0; i < slots; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> deg(slots, 0);
    AnchoredConfig c;
    c.extras = extras;
    for (int e = 0; e < m; ++e) {
      if (!(mask & (1u << e))) continue;
      auto [x, y] = pairs[e];
      deg[x]++;
      deg[y]++;
      parent[find(x)] = find(y);
      c.edges.push_back(pairs[e]);
    }
    bool ok = true;
    for (int e = anchors; e < slots && ok; ++e)
      if (deg[e] == 0) ok = false;  // every extra must be covered
    if (!ok) continue;
    for (int v = 0; v < slots && ok; ++v) {
      if (deg[v] == 0) continue;
      bool touches = false;
      for (int a = 0; a < anchors; ++a)
        if (find(a) == find(v)) touches = true;
      if (!touches) ok = false;
    }
    if (!ok) continue;
    out.push_back(std::move(c));
  }
  return out;
}

// config lists with contraction plans for the batch path, cached per (anchors, budget)
struct PlannedConfig {
  AnchoredConfig config;
  ShapeContraction plan;
};

const std::vector<PlannedConfig>& planned_configs(int anchors, int budget) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<PlannedConfig>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(anchors, budget);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<PlannedConfig> list;
  std::vector<int> anchor_tuple(anchors);
  for (int a = 0; a < anchors; ++a) anchor_tuple[a] = a;
  for (int t = 0; t <= budget; ++t) {
    for (auto& c : enumerate_anchored_configs(anchors, t)) {
      Shape s = make_shape(anchors + t, c.edges, anchor_tuple, anchor_tuple);
      list.push_back(PlannedConfig{std::move(c), ShapeContraction::dense_plan(s)});
    }
  }
  auto [pos, inserted] = cache.emplace(key, std::move(list));
  return pos->second;
}

double factorial(int t) {
  double f = 1;
  for (int i = 2; i <= t; ++i) f *= i;
  return f;
}

// ---- subset-DP route (n <= 14, any truncation)

double dp_moment(const GraphSample& g, const std::vector<int>& s, double k, DvRule dv) {
  const int n = g.n;
  const unsigned full = 1u << n;
  Eigen::MatrixXd x = signed_weight_matrix(g);

  unsigned smask = 0;
  for (int v : s) smask |= (1u << v);

  // anchor-internal pairs factor out; their edge sum is the IS indicator
  double anchor_factor = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      anchor_factor *= (1.0 + x(s[i], s[j]));

  // g_all[W] = prod over non-anchor-internal pairs inside W of (1 + x)
  std::vector<double> span(full);
  span[0] = 1.0;
  for (unsigned w = 1; w < full; ++w) {
    int top = 31 - __builtin_clz(w);
    unsigned rest = w ^ (1u << top);
    double prod = span[rest];
    for (int u = 0; u < top; ++u) {
      if (!(rest & (1u << u))) continue;
      bool internal = (smask & (1u << u)) && (smask & (1u << top));
      if (!internal) prod *= (1.0 + x(u, top));
    }
    span[w] = prod;
  }
  // subset Moebius: span[W] <- sum_{Y <= W} (-1)^{|W \ Y|} g_all[Y]  (exact-span sums)
  for (int b = 0; b < n; ++b)
    for (unsigned w = 0; w < full; ++w)
      if (w & (1u << b)) span[w] -= span[w ^ (1u << b)];

  // connected spanning sums: split off the component of the lowest vertex
  std::vector<double> conn(full, 0.0);
  for (unsigned w = 1; w < full; ++w) {
    unsigned low = w & (~w + 1);
    double c = span[w];
    for (unsigned sub = (w - 1) & w; sub; sub = (sub - 1) & w) {
      if (!(sub & low)) continue;
      c -= conn[sub] * span[w ^ sub];
    }
    conn[w] = c;
  }

  // collections of disjoint components, each touching the anchor set
  std::vector<double> cc(full, 0.0);
  cc[0] = 1.0;
  for (unsigned w = 1; w < full; ++w) {
    unsigned low = w & (~w + 1);
    double acc = 0;
    for (unsigned sub = w;; sub = (sub - 1) & w) {
      if ((sub & low) && (sub & smask)) acc += conn[sub] * cc[w ^ sub];
      if (sub == 0) break;
    }
    cc[w] = acc;
  }

  const int cap = dv.cap_for(static_cast<int>(s.size()));
  const double kn = k / n;
  double total = 0;
  for (unsigned w = 0; w < full; ++w) {
    int verts = __builtin_popcount(w | smask);
    if (verts > cap) continue;
    if (cc[w] == 0.0) continue;
    total += std::pow(kn, verts) * cc[w];
  }
  return anchor_factor * total;
}

// ---- anchored DFS route (moderate n, small extra budget, any |S| <= 4)

double dfs_moment(const GraphSample& g, const std::vector<int>& s, double k, DvRule dv) {
  const int n = g.n;
  const int a = static_cast<int>(s.size());
  const int budget = dv.extras_for(a);
  Eigen::MatrixXd x = signed_weight_matrix(g);

  // feasibility estimate before enumerating
  double work = 0;
  std::vector<std::vector<AnchoredConfig>> configs(budget + 1);
  for (int t = 0; t <= budget; ++t) {
    configs[t] = enumerate_anchored_configs(a, t);
    double subsets = 1;
    for (int i = 0; i < t; ++i) subsets *= static_cast<double>(n - a - i) / (i + 1);
    double edge_ops = 0;
    for (auto& c : configs[t]) edge_ops += c.edges.size();
    work += subsets * std::max(1.0, edge_ops);
  }
  if (work > 3e9)
    throw std::runtime_error("pseudo-moment enumeration budget exceeded (~" +
                             std::to_string(static_cast<long long>(work)) +
                             " anchored edge evaluations); lower D_V");

  double anchor_factor = 1.0;
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) anchor_factor *= (1.0 + x(s[i], s[j]));

  std::vector<bool> in_s(n, false);
  for (int v : s) in_s[v] = true;
  std::vector<int> others;
  for (int v = 0; v < n; ++v)
    if (!in_s[v]) others.push_back(v);

  const double kn = k / n;
  double total = 1.0;  // R = empty
  std::vector<int> slot_label(a + budget);
  for (int i = 0; i < a; ++i) slot_label[i] = s[i];

  for (int t = 1; t <= budget; ++t) {
    if (configs[t].empty()) continue;
    double weight = std::pow(kn, t);
    std::vector<int> pick(t);
    double tsum = 0;
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == t) {
        for (int i = 0; i < t; ++i) slot_label[a + i] = others[pick[i]];
        for (const auto& c : configs[t]) {
          double prod = 1;
          for (auto [u, v] : c.edges) prod *= x(slot_label[u], slot_label[v]);
          tsum += prod;
        }
        return;
      }
      for (int i = start; i <= static_cast<int>(others.size()) - (t - depth); ++i) {
        pick[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    total += weight * tsum;
  }
  return anchor_factor * std::pow(kn, a) * total;
}

}  // namespace

double pseudo_moment(const GraphSample& g, const std::vector<int>& s, double k, DvRule dv) {
  check_anchor_set(g, s);
  if (s.empty()) return 1.0;
  if (static_cast<int>(s.size()) > dv.cap_for(static_cast<int>(s.size())))
    throw std::invalid_argument("anchor set larger than the vertex truncation");
  if (g.n <= 14) return dp_moment(g, s, k, dv);
  return dfs_moment(g, s, k, dv);
}

PseudoMomentTables::PseudoMomentTables(const GraphSample& g, double k, DvRule dv) {
  const int n = g.n;
  if (n > 4096) throw std::runtime_error("moment tables: n too large for dense contraction");
  for (int anchors : {1, 2}) {
    int extras = dv.extras_for(anchors);
    if (extras > 3)
      throw std::runtime_error(
          "pseudo-moment budget exceeded: D_V allows " + std::to_string(extras) +
          " extra vertices; exact contraction supports at most 3 (use n <= 14 for the "
          "subset-DP route)");
  }
  weights_ = signed_weight_matrix(g);
  const double kn = k / n;

  single_ = Eigen::VectorXd::Zero(n);
  for (const auto& pc : planned_configs(1, dv.extras_for(1))) {
    Eigen::MatrixXd out = pc.plan.run(weights_);
    double scale = std::pow(kn, 1 + pc.config.extras) / factorial(pc.config.extras);
    single_ += scale * out.col(0);
  }

  pair_base_ = Eigen::MatrixXd::Zero(n, n);
  for (const auto& pc : planned_configs(2, dv.extras_for(2))) {
    Eigen::MatrixXd out = pc.plan.run(weights_);
    double scale = std::pow(kn, 2 + pc.config.extras) / factorial(pc.config.extras);
    pair_base_ += scale * out;
  }
}

double PseudoMomentTables::pair(int i, int j) const {
  if (i == j) throw std::invalid_argument("pair moment needs distinct vertices");
  return (1.0 + weights_(i, j)) * pair_base_(i, j);
}

Eigen::MatrixXd MomentMatrix::rescaled() const {
  if (k <= 0) return m;
  Eigen::VectorXd scale(index_sets.size());
  for (std::size_t a = 0; a < index_sets.size(); ++a)
    scale[a] = std::pow(std::sqrt(n / k), index_sets[a].size());
  return scale.asDiagonal() * m * scale.asDiagonal();
}

MomentMatrix build_moment_matrix(const GraphSample& g, double k, int dsos, DvRule dv) {
  if (dsos != 2 && dsos != 4)
    throw std::invalid_argument("exact experiments support dsos in {2, 4}");
  const int n = g.n;
  MomentMatrix mm;
  mm.n = n;
  mm.d = g.d;
  mm.k = k;
  mm.dsos = dsos;
  mm.dv = dv;

  mm.index_sets.push_back({});
  for (int i = 0; i < n; ++i) mm.index_sets.push_back({i});
  if (dsos >= 4)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) mm.index_sets.push_back({i, j});
  const std::size_t dim = mm.index_sets.size();
  if (dim > 4000) throw std::runtime_error("moment matrix dimension exceeds eigensolver cap");

  // distinct unions, then one moment evaluation each
  std::map<std::vector<int>, double> values;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      std::vector<int> u = mm.index_sets[a];
      u.insert(u.end(), mm.index_sets[b].begin(), mm.index_sets[b].end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      values.emplace(std::move(u), 0.0);
    }

  const bool batch = (n > 14);
  std::optional<PseudoMomentTables> tables;
  if (batch) tables.emplace(g, k, dv);

  std::vector<std::pair<const std::vector<int>*, double*>> work;
  work.reserve(values.size());
  for (auto& [set, val] : values) work.emplace_back(&set, &val);
  parallel_for(static_cast<int>(work.size()), [&](int i) {
    const auto& set = *work[i].first;
    double v;
    if (set.empty())
      v = 1.0;
    else if (batch && set.size() == 1)
      v = tables->single(set[0]);
    else if (batch && set.size() == 2)
      v = tables->pair(set[0], set[1]);
    else
      v = pseudo_moment(g, set, k, dv);
    *work[i].second = v;
  });

  mm.m.resize(dim, dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      std::vector<int> u = mm.index_sets[a];
      u.insert(u.end(), mm.index_sets[b].begin(), mm.index_sets[b].end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      double v = values.at(u);
      mm.m(a, b) = v;
      mm.m(b, a) = v;
    }
  return mm;
}

ConstraintReport check_constraints(const MomentMatrix& mm, const GraphSample& g) {
  ConstraintReport r;
  r.normalization = mm.m(0, 0);
  const std::size_t dim = mm.index_sets.size();
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      std::vector<int> u = mm.index_sets[a];
      u.insert(u.end(), mm.index_sets[b].begin(), mm.index_sets[b].end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      bool independent = true;
      for (std::size_t i = 0; i < u.size() && independent; ++i)
        for (std::size_t j = i + 1; j < u.size() && independent; ++j)
          if (g.has_edge(u[i], u[j])) independent = false;
      if (!independent) {
        r.nonindependent_checked++;
        r.max_nonindependent_abs = std::max(r.max_nonindependent_abs, std::abs(mm.m(a, b)));
      }
    }
  for (int i = 0; i < mm.n; ++i) r.objective += mm.m(0, 1 + i);
  r.objective_over_k = (mm.k > 0) ? r.objective / mm.k : 0.0;
  r.symmetry_defect = (mm.m - mm.m.transpose()).cwiseAbs().maxCoeff();
  return r;
}

PsdResult psd_check(const MomentMatrix& mm, double tol_scale) {
  if (mm.index_sets.size() > 4000)
    throw std::runtime_error("psd_check: dimension exceeds dense eigensolver cap");
  Eigen::MatrixXd m = mm.rescaled();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  PsdResult r;
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.matrix_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  r.psd = r.min_eigenvalue >= -tol_scale * r.matrix_norm;
  return r;
}

bool is_middle_shape(const Shape& s) {
  require_valid(s);
  if (s.left.size() != s.right.size()) return false;
  for (const auto& sep : enumerate_separators(s))
    if (sep.size() < s.left.size()) return false;
  return true;
}

ShapeCoefficient coefficient(const Shape& s, double n, double k, double d) {
  const double p = d / n;
  ShapeCoefficient c;
  double sign = (s.edge_count() % 2 == 0) ? 1.0 : -1.0;
  c.lambda_tilde = std::pow(k / n, s.num_vertices) *
                   std::pow(std::sqrt(p / (1 - p)), s.edge_count()) * sign;
  c.lambda = std::pow(std::sqrt(n / k), s.left.size() + s.right.size()) * c.lambda_tilde;
  return c;
}

double PseudoExpectation::moment(const std::vector<int>& s) const {
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (static_cast<int>(sorted.size()) > dsos)
    throw std::invalid_argument("moment degree exceeds dsos");
  auto position = [&](const std::vector<int>& set) -> long long {
    if (set.empty()) return 0;
    if (set.size() == 1) return 1 + set[0];
    long long i = set[0], j = set[1];
    return 1 + n + i * (2LL * n - i - 1) / 2 + (j - i - 1);
  };
  std::size_t half = (sorted.size() + 1) / 2;
  std::vector<int> a(sorted.begin(), sorted.begin() + half);
  std::vector<int> b(sorted.begin() + half, sorted.end());
  return matrix.m(position(a), position(b));
}

PseudoExpectation build_pseudo_expectation(const GraphSample& g, double k, int dsos,
                                           DvRule dv) {
  PseudoExpectation pe;
  pe.n = g.n;
  pe.d = g.d;
  pe.k = k;
  pe.dsos = dsos;
  pe.dv = dv;
  pe.sample = std::make_shared<const GraphSample>(g);
  pe.matrix = build_moment_matrix(g, k, dsos, dv);
  return pe;
}

}  // namespace gml
