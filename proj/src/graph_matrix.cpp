#include "gml/graph_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace gml {

namespace {

constexpr long long kDenseAccumBudget = 16'000'000;
constexpr long long kHashedTermBudget = 4'000'000;
constexpr int kEngineMaxN = 4096;
constexpr int kEngineMaxVertices = 8;

// slot visit order: U, then new V vertices, then middles
struct SlotOrder {
  std::vector<int> order;            // order[k] = shape vertex visited at depth k
  std::vector<int> row_pos, col_pos; // depth of each boundary slot, tuple order
  std::vector<std::vector<int>> back_edges;  // per depth: earlier depths adjacent (with multiplicity)
};

SlotOrder make_order(const Shape& s) {
  SlotOrder so;
  std::vector<int> depth_of(s.num_vertices, -1);
  auto push = [&](int v) {
    if (depth_of[v] < 0) {
      depth_of[v] = static_cast<int>(so.order.size());
      so.order.push_back(v);
    }
  };
  for (int v : s.left) push(v);
  for (int v : s.right) push(v);
  for (int v : s.middle_vertices()) push(v);
  for (int v : s.left) so.row_pos.push_back(depth_of[v]);
  for (int v : s.right) so.col_pos.push_back(depth_of[v]);
  so.back_edges.resize(so.order.size());
  for (auto [a, b] : s.edges) {
    int da = depth_of[a], db = depth_of[b];
    so.back_edges[std::max(da, db)].push_back(std::min(da, db));
  }
  return so;
}

long long fast_encode(const std::vector<int>& t, int n) {
  switch (t.size()) {
    case 0: return 0;
    case 1: return t[0];
    case 2: return static_cast<long long>(t[0]) * (n - 1) + t[1] - (t[1] > t[0] ? 1 : 0);
    default: return -1;
  }
}

}  // namespace

long long predicted_terms(const Shape& s, int n) {
  long long t = 1;
  for (int i = 0; i < s.num_vertices; ++i) {
    if (t > (1LL << 62) / std::max(1, n)) return 1LL << 62;
    t *= (n - i);
  }
  return t;
}

MaterializedMatrix::MaterializedMatrix(Shape s, std::shared_ptr<const GraphSample> g)
    : shape_(std::move(s)),
      sample_(std::move(g)),
      rows_(sample_->n, static_cast<int>(shape_.left.size())),
      cols_(sample_->n, static_cast<int>(shape_.right.size())) {}

const char* MaterializedMatrix::storage_kind() const {
  if (csr_) return "explicit";
  if (dense_) return "dense";
  return "implicit";
}

void MaterializedMatrix::build_explicit() {
  const int n = sample_->n;
  const long long terms = predicted_terms(shape_, n);
  if (terms > kExplicitTermBudget)
    throw std::runtime_error(
        "explicit build exceeds term budget (" + std::to_string(terms) +
        " embeddings); use implicit mode");
  const long long dims = rows() * cols();
  const bool dense_accum = dims <= kDenseAccumBudget;
  if (!dense_accum && terms > kHashedTermBudget)
    throw std::runtime_error(
        "explicit build exceeds memory budget at dimension " + std::to_string(rows()) + "x" +
        std::to_string(cols()) + "; use implicit mode");

  Eigen::MatrixXd chars;
  const bool use_dense_chars = n <= 2048;
  if (use_dense_chars) chars = char_matrix(*sample_);
  auto edge_val = [&](int x, int y) {
    return use_dense_chars ? chars(x, y) : chi(*sample_, x, y);
  };

  SlotOrder so = make_order(shape_);
  const int m = static_cast<int>(so.order.size());
  std::vector<int> label(m, -1);
  std::vector<bool> used(n, false);
  std::vector<double> partial(m + 1, 1.0);
  std::vector<double> dense_acc;
  std::unordered_map<long long, double> hash_acc;
  if (dense_accum) dense_acc.assign(static_cast<std::size_t>(dims), 0.0);

  std::vector<int> row_t(shape_.left.size()), col_t(shape_.right.size());
  term_count_ = 0;

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      for (std::size_t i = 0; i < so.row_pos.size(); ++i) row_t[i] = label[so.row_pos[i]];
      for (std::size_t i = 0; i < so.col_pos.size(); ++i) col_t[i] = label[so.col_pos[i]];
      long long r = fast_encode(row_t, n);
      long long c = fast_encode(col_t, n);
      if (r < 0) r = rows_.encode(row_t);
      if (c < 0) c = cols_.encode(col_t);
      ++term_count_;
      const double v = partial[m];
      if (dense_accum)
        dense_acc[static_cast<std::size_t>(r * cols() + c)] += v;
      else
        hash_acc[r * cols() + c] += v;
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      double p = partial[depth];
      for (int j : so.back_edges[depth]) p *= edge_val(label[j], x);
      label[depth] = x;
      partial[depth + 1] = p;
      used[x] = true;
      self(self, depth + 1);
      used[x] = false;
    }
  };
  rec(rec, 0);

  // gather triplets sorted by (row, col)
  std::map<std::pair<long long, long long>, double> cells;
  if (dense_accum) {
    for (long long r = 0; r < rows(); ++r)
      for (long long c = 0; c < cols(); ++c) {
        double v = dense_acc[static_cast<std::size_t>(r * cols() + c)];
        if (v != 0.0) cells[{r, c}] = v;
      }
  } else {
    for (auto& [k, v] : hash_acc)
      if (v != 0.0) cells[{k / cols(), k % cols()}] = v;
  }

  Csr a;
  a.ptr.assign(rows() + 1, 0);
  for (auto& [rc, v] : cells) a.ptr[rc.first + 1]++;
  for (long long r = 0; r < rows(); ++r) a.ptr[r + 1] += a.ptr[r];
  a.col.reserve(cells.size());
  a.val.reserve(cells.size());
  for (auto& [rc, v] : cells) {
    a.col.push_back(rc.second);
    a.val.push_back(v);
  }
  csr_ = std::move(a);

  Csr t;
  t.ptr.assign(cols() + 1, 0);
  for (auto& [rc, v] : cells) t.ptr[rc.second + 1]++;
  for (long long c = 0; c < cols(); ++c) t.ptr[c + 1] += t.ptr[c];
  t.col.resize(cells.size());
  t.val.resize(cells.size());
  std::vector<long long> fill(t.ptr.begin(), t.ptr.end() - 1);
  for (auto& [rc, v] : cells) {
    long long pos = fill[rc.second]++;
    t.col[pos] = rc.first;
    t.val[pos] = v;
  }
  csr_t_ = std::move(t);
}

void MaterializedMatrix::build_dense() {
  const int n = sample_->n;
  if (n > kEngineMaxN || shape_.num_vertices > kEngineMaxVertices)
    throw std::runtime_error("dense contraction unavailable at this size");
  auto plan = ShapeContraction::dense_plan(shape_);
  Eigen::MatrixXd chars = char_matrix(*sample_);
  Eigen::MatrixXd out = plan.run(chars);

  const std::size_t lu = shape_.left.size(), lv = shape_.right.size();
  if (lu == 1 && lv == 1 && shape_.left[0] == shape_.right[0]) {
    dense_is_diagonal_ = true;
    dense_ = std::move(out);  // n x 1 of diagonal values
  } else if (lu + lv == 2 && lu == 1 && lv == 1) {
    out.diagonal().setZero();  // distinct boundary vertices cannot share a label
    dense_ = std::move(out);
  } else if (lu == 1 && lv == 0) {
    dense_ = std::move(out);  // n x 1
  } else if (lu == 0 && lv == 1) {
    dense_ = Eigen::MatrixXd(out.transpose());  // 1 x n
  } else if (lu == 0 && lv == 0) {
    dense_ = std::move(out);  // 1 x 1
  } else {
    throw std::logic_error("dense storage requires boundaries spanning <= 2 vertices");
  }
}

void MaterializedMatrix::build_implicit() {
  const int n = sample_->n;
  if (n > kEngineMaxN || shape_.num_vertices > kEngineMaxVertices)
    throw std::runtime_error("implicit contraction unavailable at this size");
  if (shape_.left.size() > 2 || shape_.right.size() > 2)
    throw std::runtime_error("implicit matvec supports boundary arity <= 2");
  plan_ = ShapeContraction::matvec_plan(shape_);
  plan_t_ = ShapeContraction::matvec_plan(transpose(shape_));
  chars_ = char_matrix(*sample_);
}

MaterializedMatrix build_matrix(const Shape& s, const GraphSample& g, BuildMode mode) {
  require_valid(s);
  MaterializedMatrix m(s, std::make_shared<const GraphSample>(g));

  std::vector<int> span = s.boundary_union();
  const bool dense_ok = span.size() <= 2 && s.num_vertices <= kEngineMaxVertices &&
                        g.n <= kEngineMaxN;
  const long long terms = predicted_terms(s, g.n);
  const bool explicit_ok =
      terms <= kExplicitTermBudget &&
      (m.rows() * m.cols() <= kDenseAccumBudget || terms <= kHashedTermBudget);

  switch (mode) {
    case BuildMode::explicit_triplets:
      m.build_explicit();
      break;
    case BuildMode::implicit_contraction:
      if (dense_ok)
        m.build_dense();
      else
        m.build_implicit();
      break;
    case BuildMode::automatic:
      if (dense_ok)
        m.build_dense();
      else if (explicit_ok)
        m.build_explicit();
      else
        m.build_implicit();
      break;
  }
  return m;
}

namespace {

Eigen::MatrixXd square_from_vec(const Eigen::VectorXd& x, int n) {
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(n, n);
  long long k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      sq(a, b) = x[k++];
    }
  return sq;
}

Eigen::VectorXd vec_from_square(const Eigen::MatrixXd& sq, int n) {
  Eigen::VectorXd x(static_cast<long long>(n) * (n - 1));
  long long k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      x[k++] = sq(a, b);
    }
  return x;
}

Eigen::VectorXd csr_apply(const MaterializedMatrix&, const std::vector<long long>& ptr,
                          const std::vector<long long>& col, const std::vector<double>& val,
                          const Eigen::VectorXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ptr.size() - 1);
  for (std::size_t r = 0; r + 1 < ptr.size(); ++r) {
    double acc = 0;
    for (long long k = ptr[r]; k < ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
    y[r] = acc;
  }
  return y;
}

}  // namespace

Eigen::VectorXd MaterializedMatrix::matvec(const Eigen::VectorXd& x) const {
  if (x.size() != cols()) throw std::invalid_argument("matvec dimension mismatch");
  const int n = sample_->n;
  if (csr_) return csr_apply(*this, csr_->ptr, csr_->col, csr_->val, x);
  if (dense_) {
    if (dense_is_diagonal_) return dense_->col(0).cwiseProduct(x);
    return (*dense_) * x;
  }
  const int av = static_cast<int>(shape_.right.size());
  Eigen::MatrixXd in;
  if (av == 2)
    in = square_from_vec(x, n);
  else if (av == 1)
    in = x;
  else
    in = Eigen::MatrixXd::Constant(1, 1, x[0]);
  Eigen::MatrixXd out = plan_->run(*chars_, &in);
  const int au = static_cast<int>(shape_.left.size());
  if (au == 2) return vec_from_square(out, n);
  if (au == 1) return out.col(0);
  return Eigen::VectorXd::Constant(1, out(0, 0));
}

Eigen::VectorXd MaterializedMatrix::matvec_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != rows()) throw std::invalid_argument("matvec dimension mismatch");
  const int n = sample_->n;
  if (csr_t_) return csr_apply(*this, csr_t_->ptr, csr_t_->col, csr_t_->val, x);
  if (dense_) {
    if (dense_is_diagonal_) return dense_->col(0).cwiseProduct(x);
    return dense_->transpose() * x;
  }
  const int au = static_cast<int>(shape_.left.size());
  Eigen::MatrixXd in;
  if (au == 2)
    in = square_from_vec(x, n);
  else if (au == 1)
    in = x;
  else
    in = Eigen::MatrixXd::Constant(1, 1, x[0]);
  Eigen::MatrixXd out = plan_t_->run(*chars_, &in);
  const int av = static_cast<int>(shape_.right.size());
  if (av == 2) return vec_from_square(out, n);
  if (av == 1) return out.col(0);
  return Eigen::VectorXd::Constant(1, out(0, 0));
}

double MaterializedMatrix::entry(const std::vector<int>& row,
                                 const std::vector<int>& col) const {
  const int n = sample_->n;
  auto check_tuple = [&](const std::vector<int>& t, int arity) {
    if (static_cast<int>(t.size()) != arity) throw std::invalid_argument("malformed tuple arity");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0 || t[i] >= n) throw std::invalid_argument("tuple label out of range");
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (t[i] == t[j]) throw std::invalid_argument("tuple has duplicate labels");
    }
  };
  check_tuple(row, rows_.arity());
  check_tuple(col, cols_.arity());

  if (csr_) {
    long long r = rows_.encode(row), c = cols_.encode(col);
    for (long long k = csr_->ptr[r]; k < csr_->ptr[r + 1]; ++k)
      if (csr_->col[k] == c) return csr_->val[k];
    return 0.0;
  }
  if (dense_) {
    if (dense_is_diagonal_) return row[0] == col[0] ? (*dense_)(row[0], 0) : 0.0;
    long long r = rows_.encode(row), c = cols_.encode(col);
    return (*dense_)(r, c);
  }

  // implicit: backtrack over middle labels with boundary labels pinned
  std::vector<int> label(shape_.num_vertices, -1);
  std::vector<bool> used(n, false);
  auto pin = [&](const std::vector<int>& verts, const std::vector<int>& labels) -> bool {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      int v = verts[i], x = labels[i];
      if (label[v] >= 0 && label[v] != x) return false;  // same vertex, two labels
      if (label[v] < 0) {
        if (used[x]) return false;  // same label, two vertices
        label[v] = x;
        used[x] = true;
      }
    }
    return true;
  };
  if (!pin(shape_.left, row) || !pin(shape_.right, col)) return 0.0;

  auto middles = shape_.middle_vertices();
  double total = 0.0;
  auto edge_factor = [&](int v) {
    double p = 1.0;
    for (auto [a, b] : shape_.edges) {
      if (a != v && b != v) continue;
      int o = (a == v) ? b : a;
      if (label[o] < 0) continue;  // counted when the later endpoint is placed
      p *= (*chars_)(label[v], label[o]);
    }
    return p;
  };
  auto rec = [&](auto&& self, std::size_t k, double acc) -> void {
    if (k == middles.size()) {
      total += acc;
      return;
    }
    int v = middles[k];
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      label[v] = x;
      used[x] = true;
      self(self, k + 1, acc * edge_factor(v));
      used[x] = false;
      label[v] = -1;
    }
  };
  // boundary-boundary edges
  double base = 1.0;
  for (auto [a, b] : shape_.edges)
    if (label[a] >= 0 && label[b] >= 0) base *= (*chars_)(label[a], label[b]);
  rec(rec, 0, base);
  return total;
}

Eigen::MatrixXd MaterializedMatrix::to_dense() const {
  if (rows() * cols() > kDenseAccumBudget)
    throw std::runtime_error("to_dense: dimensions too large");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows(), cols());
  if (csr_) {
    for (long long r = 0; r < rows(); ++r)
      for (long long k = csr_->ptr[r]; k < csr_->ptr[r + 1]; ++k)
        out(r, csr_->col[k]) = csr_->val[k];
    return out;
  }
  if (dense_) {
    if (dense_is_diagonal_) {
      for (long long i = 0; i < rows(); ++i) out(i, i) = (*dense_)(i, 0);
      return out;
    }
    return *dense_;
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(cols());
  for (long long c = 0; c < cols(); ++c) {
    e[c] = 1.0;
    out.col(c) = matvec(e);
    e[c] = 0.0;
  }
  return out;
}

void MaterializedMatrix::export_triplets(std::ostream& out) const {
  if (csr_) {
    for (long long r = 0; r < rows(); ++r)
      for (long long k = csr_->ptr[r]; k < csr_->ptr[r + 1]; ++k)
        out << r << " " << csr_->col[k] << " " << csr_->val[k] << "\n";
    return;
  }
  if (dense_) {
    if (dense_is_diagonal_) {
      for (long long i = 0; i < rows(); ++i)
        if ((*dense_)(i, 0) != 0.0) out << i << " " << i << " " << (*dense_)(i, 0) << "\n";
      return;
    }
    for (long long r = 0; r < dense_->rows(); ++r)
      for (long long c = 0; c < dense_->cols(); ++c)
        if ((*dense_)(r, c) != 0.0) out << r << " " << c << " " << (*dense_)(r, c) << "\n";
    return;
  }
  throw std::runtime_error("triplet export requires explicit or dense storage");
}

long long entry_term_count(const Shape& s, const GraphSample& g,
                           const std::vector<int>& row, const std::vector<int>& col) {
  const int n = g.n;
  std::vector<int> label(s.num_vertices, -1);
  std::vector<bool> used(n, false);
  auto pin = [&](const std::vector<int>& verts, const std::vector<int>& labels) -> bool {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      int v = verts[i], x = labels[i];
      if (label[v] >= 0 && label[v] != x) return false;
      if (label[v] < 0) {
        if (used[x]) return false;
        label[v] = x;
        used[x] = true;
      }
    }
    return true;
  };
  if (!pin(s.left, row) || !pin(s.right, col)) return 0;
  long long free_labels = n;
  for (bool u : used)
    if (u) --free_labels;
  long long count = 1;
  for (std::size_t k = 0; k < s.middle_vertices().size(); ++k) count *= (free_labels - k);
  return count;
}

}  // namespace gml
