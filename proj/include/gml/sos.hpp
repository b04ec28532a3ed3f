#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "gml/graph_sample.hpp"
#include "gml/shape.hpp"

namespace gml {

/// Vertex truncation for the connected pseudo-calibration sum: the cap on
/// |V(R) ∪ S|, either absolute or |S| + extra.
struct DvRule {
  bool relative = true;
  int value = 3;

  static DvRule extra(int budget) { return DvRule{true, budget}; }
  static DvRule absolute(int cap) { return DvRule{false, cap}; }
  static DvRule paper_default(int dsos, int n);  // ceil(dsos * log n)

  int cap_for(int anchors) const { return relative ? anchors + value : value; }
  int extras_for(int anchors) const { return std::max(0, cap_for(anchors) - anchors); }
};

/// Per-pair weight x_e = -sqrt(p/(1-p)) * chi_e(G): exactly -1 on edges of the
/// sample and p/(1-p) on non-edges; zero diagonal.
Eigen::MatrixXd signed_weight_matrix(const GraphSample& g);

/// The connected-truncation pseudo-calibration moment
///   Ẽ[x_S] = sum over edge sets R with every component touching S and
///            |V(R) ∪ S| <= D_V of (k/n)^{|V(R) ∪ S|} x_R(G).
/// Routes: exact subset DP for n <= 14 (any D_V); anchored enumeration
/// otherwise (small extra-vertex budgets only).
double pseudo_moment(const GraphSample& g, const std::vector<int>& s, double k, DvRule dv);

/// All moments with |S| <= 2 at once (contraction over anchored configurations).
class PseudoMomentTables {
 public:
  PseudoMomentTables(const GraphSample& g, double k, DvRule dv);
  double empty() const { return 1.0; }
  double single(int i) const { return single_[i]; }
  double pair(int i, int j) const;
  const Eigen::VectorXd& singles() const { return single_; }

 private:
  Eigen::VectorXd single_;
  Eigen::MatrixXd pair_base_;  // before the anchor-edge factor (1 + x_ij)
  Eigen::MatrixXd weights_;
};

struct MomentMatrix {
  int n = 0;
  double d = 0, k = 0;
  int dsos = 2;
  DvRule dv;
  std::vector<std::vector<int>> index_sets;  // all vertex sets of size <= dsos/2
  Eigen::MatrixXd m;                         // m(a,b) = Ẽ[x_{Sa ∪ Sb}]

  Eigen::MatrixXd rescaled() const;  // diag((n/k)^{|S|/2}) conjugation
};

MomentMatrix build_moment_matrix(const GraphSample& g, double k, int dsos, DvRule dv);

struct ConstraintReport {
  double normalization = 0;            // Ẽ[1]
  double max_nonindependent_abs = 0;   // over entries whose index union spans an edge
  int nonindependent_checked = 0;
  double objective = 0;                // sum_i Ẽ[x_i]
  double objective_over_k = 0;
  double symmetry_defect = 0;
  bool pass(double tol = 1e-12) const {
    return normalization == 1.0 && max_nonindependent_abs <= tol && symmetry_defect <= tol;
  }
};

ConstraintReport check_constraints(const MomentMatrix& mm, const GraphSample& g);

struct PsdResult {
  double min_eigenvalue = 0;
  double matrix_norm = 0;  // spectral norm of the checked (rescaled) matrix
  bool psd = false;
};

/// Minimum eigenvalue of the rescaled moment matrix (unrescaled when k = 0).
PsdResult psd_check(const MomentMatrix& mm, double tol_scale = 1e-8);

/// True iff |U| = |V| and no separator is smaller than |U|.
bool is_middle_shape(const Shape& s);

struct ShapeCoefficient {
  double lambda_tilde = 0;  // (k/n)^{|V|} (p/(1-p))^{|E|/2} (-1)^{|E|}
  double lambda = 0;        // (n/k)^{(|U|+|V|)/2} lambda_tilde
};
ShapeCoefficient coefficient(const Shape& s, double n, double k, double d);

/// Spec-facing bundle: the moment functional with its parameters and matrix.
struct PseudoExpectation {
  int n = 0;
  double d = 0, k = 0;
  int dsos = 2;
  DvRule dv;
  std::shared_ptr<const GraphSample> sample;
  MomentMatrix matrix;

  double moment(const std::vector<int>& s) const;  // |S| <= dsos, from the matrix
};

PseudoExpectation build_pseudo_expectation(const GraphSample& g, double k, int dsos, DvRule dv);

}  // namespace gml
