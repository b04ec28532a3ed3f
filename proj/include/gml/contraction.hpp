#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gml/graph_sample.hpp"
#include "gml/shape.hpp"

namespace gml {

/// Dense character matrix: A(i,j) = chi({i,j}), zero diagonal.
Eigen::MatrixXd char_matrix(const GraphSample& g);

/// Sum over injective assignments of a shape's vertices ("slots") to [n] of the
/// product of per-edge factors F(phi(a), phi(b)), with up to two slots left free
/// (the output indices) and an optional input tensor attached to the right
/// boundary. Injectivity is handled by inclusion-exclusion over slot-coincidence
/// partitions; each term contracts to dense matrix/vector algebra.
///
/// Free slots of a dense plan are the distinct vertices of U ∪ V; a matvec plan
/// frees the distinct vertices of U and multiplies the input over V's slots.
/// Entries of a rank-2 output at equal indices are not meaningful (injective
/// tuples are duplicate-free); callers ignore or zero the diagonal.
class ShapeContraction {
 public:
  static ShapeContraction dense_plan(const Shape& s);
  static ShapeContraction matvec_plan(const Shape& s);

  /// F: n x n symmetric, zero diagonal. v (matvec plans only): n x n for
  /// |V| = 2 with zero diagonal, n x 1 for |V| = 1, 1 x 1 for |V| = 0.
  /// Output: 1 x 1, n x 1, or n x n by free-slot count.
  Eigen::MatrixXd run(const Eigen::MatrixXd& F, const Eigen::MatrixXd* v = nullptr) const;

  int free_count() const { return static_cast<int>(free_slots_.size()); }
  bool needs_input() const { return needs_input_; }
  std::size_t partition_count() const { return partitions_.size(); }

 private:
  struct FactorSpec {
    int a = -1, b = -1;  // block ids; b = -1 for rank-1
    bool is_input = false;
    bool input_transposed = false;  // input's first index sits on block b
  };
  struct Partition {
    double mu = 1.0;
    int num_blocks = 0;
    std::vector<int> free_block;      // output position -> block id
    std::vector<int> elim_order;      // bound blocks in elimination order
    std::vector<FactorSpec> factors;  // A factors per edge + optional input
  };

  ShapeContraction(const Shape& s, std::vector<int> free, std::vector<int> input_slots);
  void enumerate_partitions();
  static bool plan_elimination(Partition& p);

  Shape shape_;
  std::vector<int> free_slots_;
  std::vector<int> input_slots_;
  bool needs_input_ = false;
  std::vector<Partition> partitions_;
};

}  // namespace gml
