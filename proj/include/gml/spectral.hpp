#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gml/graph_matrix.hpp"

namespace gml {

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  bool restart_disagreement = false;
  std::string method;  // "dense" or "power"
};

/// Largest singular value. Dense decomposition when max dimension <= 2000,
/// power iteration on M M^T otherwise (deterministic start plus one restart).
NormResult spectral_norm(const MaterializedMatrix& m, double tol = 1e-6, int max_iter = 2000);
NormResult spectral_norm_dense(const Eigen::MatrixXd& m);

/// Exact tr((M M^T)^q) by column sweeps (no stochastic estimator).
double trace_moment(const MaterializedMatrix& m, int q);

struct McStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::vector<double> values;
};

McStats expected_trace_mc(const Shape& s, GraphModel model, int n, double d, int q,
                          int num_seeds, std::uint64_t seed_base = 1000);

enum class ScalarKind { floating_edge_sum, path2_sum };
ScalarKind scalar_kind_from_name(const std::string&);

/// floating_edge_sum = sum_{a<b} chi({a,b});
/// path2_sum = sum over distinct (i,j,k) of chi({i,j}) chi({k,j}).
double scalar_statistic(ScalarKind kind, const GraphSample& g);

/// Theorem window flags: q >= |U| log n and q < d^(1/10).
struct RegimeFlags {
  bool q_large_enough = false;
  bool q_below_d_tenth = false;
  bool on() const { return q_large_enough && q_below_d_tenth; }
};
RegimeFlags theorem_regime(int n, double d, int q, const Shape& s);

}  // namespace gml
