#include "gml/norm_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gml/report.hpp"

namespace gml {

int BoundParams::default_q(int n, const Shape& s) {
  int lg = static_cast<int>(std::ceil(std::log2(std::max(2, n))));
  return lg * std::max<int>(1, static_cast<int>(s.left.size()));
}

char step_label_char(StepLabel l) {
  switch (l) {
    case StepLabel::F: return 'F';
    case StepLabel::S: return 'S';
    case StepLabel::R: return 'R';
    case StepLabel::H: return 'H';
    case StepLabel::Singleton: return '1';
  }
  return '?';
}

NormBoundReport closed_form_bound(const Shape& s, const BoundParams& params_in,
                                  bool include_float, bool keep_all) {
  require_valid(s);
  if (s.has_multiedges())
    throw std::invalid_argument("closed-form bound unsupported for multi-edge shapes");
  const BoundParams params = params_in.q_tau > 0 ? params_in : params_in.for_shape(s);
  const double n = params.n, p = params.p(), q = params.q;
  if (!(p > 0 && p < 1)) throw std::invalid_argument("need 0 < d < n");

  NormBoundReport rep;
  auto regime = [&] {
    std::vector<std::string> w;
    double need = std::max<std::size_t>(s.left.size(), 1) * std::log(n);
    if (params.q < need)
      w.push_back("q below |U| log n guidance");
    if (!(params.q < std::pow(params.d, 0.1)))
      w.push_back("q at or above d^(1/10) window");
    return w;
  };
  rep.warnings = regime();
  rep.regime_warning = !rep.warnings.empty();

  const auto comp = component_report(s);
  const int isolated = static_cast<int>(comp.isolated_vertices.size());
  const auto separators = enumerate_separators(s);

  double best = -1;
  for (const auto& sep : separators) {
    std::vector<bool> in_sep(s.num_vertices, false);
    for (int v : sep) in_sep[v] = true;
    int edges_inside = 0;
    for (auto [a, b] : s.edges)
      if (in_sep[a] && in_sep[b]) ++edges_inside;

    SeparatorFactors f;
    f.separator = sep;
    f.vertex_factor =
        std::pow(std::sqrt(n) * q, s.num_vertices - static_cast<int>(sep.size()));
    f.edge_factor = std::pow(std::sqrt((1 - p) / p), edges_inside);
    f.isolated_factor = std::pow(std::sqrt(n), isolated);
    f.float_factor = 1.0;
    if (include_float) {
      for (const auto& c : comp.components) {
        if (!c.floating || !c.tree_like) continue;
        bool touches = false;
        for (int v : c.vertices)
          if (in_sep[v]) touches = true;
        if (!touches) f.float_factor *= std::sqrt(n);
      }
    }
    f.cnorm_factor = std::pow(params.c_norm, s.edge_count());
    f.total = f.vertex_factor * f.edge_factor * f.isolated_factor * f.float_factor *
              f.cnorm_factor;
    if (keep_all) rep.per_separator.push_back(f);
    if (f.total > best) {
      best = f.total;
      rep.best = f;
    }
  }
  rep.value = best;
  return rep;
}

double step_value(StepLabel label, const BoundParams& params) {
  const double p = params.p();
  switch (label) {
    case StepLabel::Singleton: return std::sqrt(1.0 / params.n);
    case StepLabel::F:
    case StepLabel::R: return 1.0;
    case StepLabel::S: return (2.0 * params.q) * (2.0 * params.q);
    case StepLabel::H: return std::sqrt((1 - p) / p);
  }
  return 1.0;
}

double vertex_cost(VertexAppearance kind, const BoundParams& params) {
  switch (kind) {
    case VertexAppearance::first_and_last_same_block: return params.n;
    case VertexAppearance::first_or_last: return std::sqrt(params.n) * params.q_tau;
    case VertexAppearance::middle: return params.q_tau;
  }
  return 1.0;
}

std::vector<int> build_separator_from_labeling(const Shape& s, const StepLabeling& l) {
  if (l.size() != s.edges.size())
    throw std::invalid_argument("labeling size must match edge count");
  std::set<int> sb;
  for (int v : s.boundary_intersection()) sb.insert(v);
  std::vector<bool> in_left(s.num_vertices, false), in_right(s.num_vertices, false);
  for (int v : s.left) in_left[v] = true;
  for (int v : s.right) in_right[v] = true;

  std::vector<bool> has_f(s.num_vertices, false), has_r(s.num_vertices, false);
  for (std::size_t e = 0; e < l.size(); ++e) {
    auto [a, b] = s.edges[e];
    switch (l[e]) {
      case StepLabel::H:
        sb.insert(a);
        sb.insert(b);
        break;
      case StepLabel::S:
        sb.insert(a);
        sb.insert(b);
        break;
      case StepLabel::F:
        has_f[a] = has_f[b] = true;
        if (in_left[a]) sb.insert(a);
        if (in_left[b]) sb.insert(b);
        break;
      case StepLabel::R:
        has_r[a] = has_r[b] = true;
        if (in_right[a]) sb.insert(a);
        if (in_right[b]) sb.insert(b);
        break;
      case StepLabel::Singleton:
        break;
    }
  }
  for (int v = 0; v < s.num_vertices; ++v)
    if (has_f[v] && has_r[v]) sb.insert(v);
  return {sb.begin(), sb.end()};
}

double block_value(const Shape& s, const StepLabeling& l, const BoundParams& params_in) {
  const BoundParams params = params_in.q_tau > 0 ? params_in : params_in.for_shape(s);
  auto sb = build_separator_from_labeling(s, l);
  std::vector<bool> in_sb(s.num_vertices, false);
  for (int v : sb) in_sb[v] = true;
  std::vector<bool> in_uv(s.num_vertices, false);
  for (int v : s.boundary_intersection()) in_uv[v] = true;
  std::vector<bool> boundary(s.num_vertices, false);
  for (int v : s.boundary_union()) boundary[v] = true;

  std::vector<int> degree(s.num_vertices, 0);
  std::vector<bool> only_singleton(s.num_vertices, true);
  for (std::size_t e = 0; e < l.size(); ++e) {
    auto [a, b] = s.edges[e];
    degree[a]++;
    degree[b]++;
    if (l[e] != StepLabel::Singleton) only_singleton[a] = only_singleton[b] = false;
  }

  double vtx = 1.0;
  for (int v = 0; v < s.num_vertices; ++v) {
    if (in_uv[v]) continue;  // specified by both boundaries, no cost
    if (in_sb[v]) {
      vtx *= vertex_cost(VertexAppearance::middle, params);
    } else if (degree[v] > 0 && only_singleton[v]) {
      // singleton-only vertices make both first and last appearances here;
      // boundary ones split the factor across the two adjacent blocks
      vtx *= boundary[v] ? std::sqrt(params.n)
                         : vertex_cost(VertexAppearance::first_and_last_same_block, params);
    } else if (degree[v] == 0 && !boundary[v]) {
      vtx *= vertex_cost(VertexAppearance::first_and_last_same_block, params);
    } else {
      vtx *= vertex_cost(VertexAppearance::first_or_last, params);
    }
  }
  double edges = 1.0;
  for (auto lab : l) edges *= step_value(lab, params);
  return vtx * edges;
}

namespace {

constexpr StepLabel kAllLabels[5] = {StepLabel::F, StepLabel::S, StepLabel::R, StepLabel::H,
                                     StepLabel::Singleton};

StepLabeling labeling_from_rank(long long rank, std::size_t edges) {
  StepLabeling l(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    l[e] = kAllLabels[rank % 5];
    rank /= 5;
  }
  return l;
}

}  // namespace

double block_value_sum(const Shape& s, const BoundParams& params_in) {
  require_valid(s);
  if (s.edges.size() > 12)
    throw std::invalid_argument("block_value_sum: 5^|E| enumeration infeasible beyond 12 edges");
  const BoundParams params = params_in.q_tau > 0 ? params_in : params_in.for_shape(s);
  long long total = 1;
  for (std::size_t e = 0; e < s.edges.size(); ++e) total *= 5;

  std::vector<double> partial;
  int chunks = std::min<long long>(total, std::max(1, env_threads()));
  partial.assign(chunks, 0.0);
  parallel_for(chunks, [&](int c) {
    long long lo = total * c / chunks, hi = total * (c + 1) / chunks;
    double acc = 0;
    for (long long r = lo; r < hi; ++r)
      acc += block_value(s, labeling_from_rank(r, s.edges.size()), params);
    partial[c] = acc;
  });
  double sum = 0;
  for (double v : partial) sum += v;
  return sum;
}

std::vector<std::pair<std::string, double>> block_value_table(const Shape& s,
                                                              const BoundParams& params_in) {
  const BoundParams params = params_in.q_tau > 0 ? params_in : params_in.for_shape(s);
  long long total = 1;
  for (std::size_t e = 0; e < s.edges.size(); ++e) total *= 5;
  if (total > 100000) throw std::invalid_argument("labeling table too large to report");
  std::vector<std::pair<std::string, double>> out;
  for (long long r = 0; r < total; ++r) {
    auto l = labeling_from_rank(r, s.edges.size());
    std::string name;
    for (auto lab : l) name += step_label_char(lab);
    out.emplace_back(name, block_value(s, l, params));
  }
  return out;
}

WalkValueBound walk_value_bound(const WalkSummary& w, const BoundParams& params) {
  if (w.num_surprise < 0 || w.num_singleton < 0 || w.num_nonsingleton < 0 ||
      w.total_multiplicity < 0)
    throw std::invalid_argument("walk summary counts must be nonnegative");
  const double p = params.p();
  WalkValueBound b;
  b.unscaled = (2.0 + params.epsilon) *
               std::pow(2.0 * params.q, 2.0 * w.num_surprise) *
               std::pow(p * (1 - p) / params.n, w.num_singleton / 2.0) *
               std::pow(p * (1 - p), w.num_nonsingleton);
  b.scaled = b.unscaled * std::pow(1.0 / (p * (1 - p)), w.total_multiplicity / 2.0);
  return b;
}

}  // namespace gml
