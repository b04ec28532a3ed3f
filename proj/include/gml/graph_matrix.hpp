#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "gml/contraction.hpp"
#include "gml/graph_sample.hpp"
#include "gml/shape.hpp"
#include "gml/tuple_index.hpp"

namespace gml {

enum class BuildMode { automatic, explicit_triplets, implicit_contraction };

/// Predicted number of embedding terms: the falling factorial n!/(n-|V(tau)|)!.
long long predicted_terms(const Shape& s, int n);

inline constexpr long long kExplicitTermBudget = 100'000'000;

/// The graph matrix M_tau of a shape over a sample. Rows and columns are
/// indexed by ordered duplicate-free tuples (TupleIndex order). The (r, c)
/// entry sums prod chi over shape edges across injective embeddings whose
/// boundary labels realize r and c through a single map.
class MaterializedMatrix {
 public:
  const Shape& shape() const { return shape_; }
  const GraphSample& sample() const { return *sample_; }
  const TupleIndex& row_index() const { return rows_; }
  const TupleIndex& col_index() const { return cols_; }
  long long rows() const { return rows_.size(); }
  long long cols() const { return cols_.size(); }
  const char* storage_kind() const;  // "explicit" | "dense" | "implicit"

  Eigen::VectorXd matvec(const Eigen::VectorXd& x) const;
  Eigen::VectorXd matvec_transpose(const Eigen::VectorXd& x) const;
  double entry(const std::vector<int>& row, const std::vector<int>& col) const;

  /// Non-null for dense storage (shapes whose boundaries span <= 2 vertices);
  /// for a shared boundary vertex the matrix is the induced diagonal one.
  const Eigen::MatrixXd* dense() const { return dense_ ? &*dense_ : nullptr; }
  Eigen::MatrixXd to_dense() const;  // any storage; dims must be small

  long long term_count() const { return term_count_; }  // explicit builds only
  void export_triplets(std::ostream& out) const;

 private:
  friend MaterializedMatrix build_matrix(const Shape&, const GraphSample&, BuildMode);

  MaterializedMatrix(Shape s, std::shared_ptr<const GraphSample> g);

  void build_explicit();
  void build_dense();
  void build_implicit();

  Shape shape_;
  std::shared_ptr<const GraphSample> sample_;
  TupleIndex rows_, cols_;

  // explicit storage (CSR plus a transposed copy)
  struct Csr {
    std::vector<long long> ptr, col;
    std::vector<double> val;
  };
  std::optional<Csr> csr_, csr_t_;
  long long term_count_ = -1;

  // dense storage
  std::optional<Eigen::MatrixXd> dense_;
  bool dense_is_diagonal_ = false;

  // implicit storage
  std::optional<ShapeContraction> plan_, plan_t_;
  std::optional<Eigen::MatrixXd> chars_;
};

MaterializedMatrix build_matrix(const Shape& s, const GraphSample& g,
                                BuildMode mode = BuildMode::automatic);

/// Embedding count for one entry (instrumentation; independent of build path).
long long entry_term_count(const Shape& s, const GraphSample& g,
                           const std::vector<int>& row, const std::vector<int>& col);

}  // namespace gml
