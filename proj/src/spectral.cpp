#include "gml/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gml/report.hpp"

namespace gml {

NormResult spectral_norm_dense(const Eigen::MatrixXd& m) {
  NormResult r;
  r.method = "dense";
  if (m.rows() == m.cols()) {
    double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      r.value = 0.0;
      return r;
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      r.value = es.eigenvalues().cwiseAbs().maxCoeff();
      return r;
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  r.value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return r;
}

namespace {

// Power iteration for the top eigenvalue of B = M^T M (or M M^T on the smaller side).
NormResult power_iterate(const MaterializedMatrix& m, double tol, int max_iter,
                         std::uint64_t start_seed) {
  const bool col_side = m.cols() <= m.rows();
  const long long dim = col_side ? m.cols() : m.rows();
  std::mt19937_64 rng(start_seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dim);
  for (long long i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();

  NormResult r;
  r.method = "power";
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w;
    if (col_side)
      w = m.matvec_transpose(m.matvec(v));
    else
      w = m.matvec(m.matvec_transpose(v));
    double next = v.dot(w);
    double nw = w.norm();
    r.iterations = it;
    if (nw == 0.0) {
      r.value = 0.0;
      r.residual = 0.0;
      return r;
    }
    v = w / nw;
    r.residual = std::abs(next - lambda) / std::max(std::abs(next), 1e-300);
    lambda = next;
    if (it > 1 && r.residual <= tol) {
      r.value = std::sqrt(std::max(lambda, 0.0));
      return r;
    }
  }
  r.converged = false;
  r.value = std::sqrt(std::max(lambda, 0.0));
  return r;
}

}  // namespace

NormResult spectral_norm(const MaterializedMatrix& m, double tol, int max_iter) {
  if (std::max(m.rows(), m.cols()) <= 2000) {
    return spectral_norm_dense(m.to_dense());
  }
  NormResult a = power_iterate(m, tol, max_iter, 0x5eed0001ULL);
  NormResult b = power_iterate(m, tol, max_iter, 0x5eed0999ULL);
  NormResult r = (a.value >= b.value) ? a : b;
  if (std::abs(a.value - b.value) > 1e-3 * std::max(a.value, 1e-300))
    r.restart_disagreement = true;
  r.converged = a.converged && b.converged;
  return r;
}

double trace_moment(const MaterializedMatrix& m, int q) {
  if (q < 1) throw std::invalid_argument("trace_moment: q must be >= 1");
  if (m.rows() > 5000) throw std::invalid_argument("trace_moment: dimension too large");
  if (m.rows() * m.cols() <= 262144) {
    Eigen::MatrixXd d = m.to_dense();
    Eigen::MatrixXd p = d * d.transpose();
    Eigen::MatrixXd acc = p;
    for (int i = 1; i < q; ++i) acc = acc * p;
    return acc.trace();
  }
  double tr = 0.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m.rows());
  for (long long i = 0; i < m.rows(); ++i) {
    e[i] = 1.0;
    Eigen::VectorXd u = e;
    for (int t = 0; t < q; ++t) u = m.matvec(m.matvec_transpose(u));
    tr += u[i];
    e[i] = 0.0;
  }
  return tr;
}

McStats expected_trace_mc(const Shape& s, GraphModel model, int n, double d, int q,
                          int num_seeds, std::uint64_t seed_base) {
  McStats st;
  st.values.resize(num_seeds);
  parallel_for(num_seeds, [&](int i) {
    GraphSample g = (model == GraphModel::erdos_renyi)
                        ? sample_er(n, d, seed_base + i)
                        : sample_regular(n, static_cast<int>(d), seed_base + i);
    auto m = build_matrix(s, g);
    st.values[i] = trace_moment(m, q);
  });
  double sum = 0;
  for (double v : st.values) sum += v;
  st.mean = sum / num_seeds;
  double ss = 0;
  for (double v : st.values) ss += (v - st.mean) * (v - st.mean);
  if (num_seeds > 1) st.stderr_ = std::sqrt(ss / (num_seeds - 1) / num_seeds);
  return st;
}

ScalarKind scalar_kind_from_name(const std::string& name) {
  if (name == "floating-edge" || name == "floating_edge_sum") return ScalarKind::floating_edge_sum;
  if (name == "path2" || name == "path2_sum") return ScalarKind::path2_sum;
  throw std::invalid_argument("unknown scalar statistic: " + name);
}

double scalar_statistic(ScalarKind kind, const GraphSample& g) {
  const auto t = g.chars();
  const double n = g.n;
  if (kind == ScalarKind::floating_edge_sum) {
    double pairs = n * (n - 1) / 2.0;
    double present = static_cast<double>(g.edge_count());
    return present * t.chi_present + (pairs - present) * t.chi_absent;
  }
  // Both chi values depend only on edge presence, so the wedge sum reduces to
  // per-vertex degree aggregates: sum_j (s_j^2 - t_j).
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    double deg = g.degree(j);
    double s = deg * t.chi_present + (n - 1 - deg) * t.chi_absent;
    double ss = deg * t.chi_present * t.chi_present +
                (n - 1 - deg) * t.chi_absent * t.chi_absent;
    acc += s * s - ss;
  }
  return acc;
}

RegimeFlags theorem_regime(int n, double d, int q, const Shape& s) {
  RegimeFlags f;
  double need = std::max<std::size_t>(s.left.size(), 1) * std::log(static_cast<double>(n));
  f.q_large_enough = q >= need;
  f.q_below_d_tenth = q < std::pow(d, 0.1);
  return f;
}

}  // namespace gml
