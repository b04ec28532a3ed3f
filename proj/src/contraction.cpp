#include "gml/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace gml {

Eigen::MatrixXd char_matrix(const GraphSample& g) {
  const auto t = g.chars();
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(g.n, g.n, t.chi_absent);
  for (auto [i, j] : g.edges) {
    a(i, j) = t.chi_present;
    a(j, i) = t.chi_present;
  }
  a.diagonal().setZero();
  return a;
}

ShapeContraction::ShapeContraction(const Shape& s, std::vector<int> free,
                                   std::vector<int> input_slots)
    : shape_(s), free_slots_(std::move(free)), input_slots_(std::move(input_slots)) {
  if (shape_.num_vertices > 8)
    throw std::invalid_argument("contraction supports at most 8 shape vertices");
  if (free_slots_.size() > 2)
    throw std::invalid_argument("contraction supports at most 2 free slots");
  enumerate_partitions();
}

ShapeContraction ShapeContraction::dense_plan(const Shape& s) {
  std::vector<int> free = s.left;
  for (int v : s.right)
    if (std::find(free.begin(), free.end(), v) == free.end()) free.push_back(v);
  return ShapeContraction(s, std::move(free), {});
}

ShapeContraction ShapeContraction::matvec_plan(const Shape& s) {
  ShapeContraction c(s, s.left, s.right);
  c.needs_input_ = true;
  return c;
}

void ShapeContraction::enumerate_partitions() {
  const int m = shape_.num_vertices;
  std::vector<int> block(m, 0);

  auto try_partition = [&](int num_blocks) {
    // blocks may not contain: two free slots, both endpoints of an edge,
    // or both slots of a rank-2 input (its diagonal is zero).
    std::vector<int> free_seen(num_blocks, 0);
    for (int f : free_slots_) free_seen[block[f]]++;
    for (int c : free_seen)
      if (c > 1) return;
    for (auto [a, b] : shape_.edges)
      if (block[a] == block[b]) return;
    if (input_slots_.size() == 2 && block[input_slots_[0]] == block[input_slots_[1]]) return;

    Partition p;
    p.num_blocks = num_blocks;
    std::vector<int> bsize(num_blocks, 0);
    for (int v = 0; v < m; ++v) bsize[block[v]]++;
    p.mu = 1.0;
    for (int c : bsize)
      for (int i = 2; i <= c; ++i) p.mu *= -(i - 1);  // (-1)^(c-1) (c-1)!
    for (int f : free_slots_) p.free_block.push_back(block[f]);
    for (auto [a, b] : shape_.edges) p.factors.push_back({block[a], block[b], false, false});
    if (input_slots_.size() == 2)
      p.factors.push_back({block[input_slots_[0]], block[input_slots_[1]], true, false});
    else if (input_slots_.size() == 1)
      p.factors.push_back({block[input_slots_[0]], -1, true, false});

    if (!plan_elimination(p))
      throw std::runtime_error("no rank<=2 elimination order for shape contraction");
    partitions_.push_back(std::move(p));
  };

  // Restricted growth strings enumerate set partitions.
  auto rec = [&](auto&& self, int v, int max_used) -> void {
    if (v == m) {
      try_partition(max_used + 1);
      return;
    }
    for (int b = 0; b <= max_used + 1 && b < m; ++b) {
      block[v] = b;
      self(self, v + 1, std::max(max_used, b));
    }
  };
  if (m == 0) {
    Partition p;
    p.num_blocks = 0;
    p.mu = 1.0;
    partitions_.push_back(std::move(p));
    return;
  }
  block[0] = 0;
  rec(rec, 1, 0);
}

bool ShapeContraction::plan_elimination(Partition& p) {
  std::vector<bool> is_free(p.num_blocks, false);
  for (int f : p.free_block) is_free[f] = true;
  std::vector<int> bound;
  for (int b = 0; b < p.num_blocks; ++b)
    if (!is_free[b]) bound.push_back(b);

  std::vector<std::vector<int>> live;
  for (const auto& f : p.factors) {
    std::vector<int> idx{f.a};
    if (f.b >= 0 && f.b != f.a) idx.push_back(f.b);
    std::sort(idx.begin(), idx.end());
    live.push_back(std::move(idx));
  }

  std::vector<int> best_order;
  long long best_cost = -1;
  std::vector<int> order;

  auto rec = [&](auto&& self, std::vector<std::vector<int>> sets, std::vector<int> remaining,
                 long long cost) -> void {
    if (best_cost >= 0 && cost >= best_cost) return;
    if (remaining.empty()) {
      best_cost = cost;
      best_order = order;
      return;
    }
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      int x = remaining[i];
      std::vector<int> nb;
      for (const auto& s : sets)
        if (std::find(s.begin(), s.end(), x) != s.end())
          for (int y : s)
            if (y != x && std::find(nb.begin(), nb.end(), y) == nb.end()) nb.push_back(y);
      if (nb.size() > 2) continue;
      std::vector<std::vector<int>> next;
      for (const auto& s : sets)
        if (std::find(s.begin(), s.end(), x) == s.end()) next.push_back(s);
      std::sort(nb.begin(), nb.end());
      if (!nb.empty()) next.push_back(nb);
      std::vector<int> rem2;
      for (std::size_t j = 0; j < remaining.size(); ++j)
        if (j != i) rem2.push_back(remaining[j]);
      long long step = 1;
      for (std::size_t k = 0; k <= nb.size(); ++k) step *= 64;
      order.push_back(x);
      self(self, std::move(next), std::move(rem2), cost + step);
      order.pop_back();
    }
  };
  rec(rec, live, bound, 0);
  if (best_cost < 0) return false;
  p.elim_order = best_order;
  return true;
}

namespace {

struct LiveTensor {
  std::vector<int> idx;                   // (row block, col block) order matters
  const Eigen::MatrixXd* ext = nullptr;   // external data, not owned
  Eigen::MatrixXd own;
  const Eigen::MatrixXd& data() const { return ext ? *ext : own; }
};

}  // namespace

Eigen::MatrixXd ShapeContraction::run(const Eigen::MatrixXd& F,
                                      const Eigen::MatrixXd* v) const {
  const long long n = F.rows();
  if (needs_input_) {
    if (!v) throw std::invalid_argument("contraction requires an input tensor");
    if (input_slots_.size() == 2 && (v->rows() != n || v->cols() != n))
      throw std::invalid_argument("input tensor must be n x n");
    if (input_slots_.size() == 1 && v->rows() != n)
      throw std::invalid_argument("input tensor must be n x 1");
  }

  Eigen::MatrixXd out;
  const int fc = free_count();
  if (fc == 0)
    out = Eigen::MatrixXd::Zero(1, 1);
  else if (fc == 1)
    out = Eigen::MatrixXd::Zero(n, 1);
  else
    out = Eigen::MatrixXd::Zero(n, n);

  for (const auto& part : partitions_) {
    std::vector<LiveTensor> live;
    double scalar = 1.0;
    for (const auto& f : part.factors) {
      LiveTensor t;
      if (f.is_input) {
        if (f.b < 0)
          t.idx = {f.a};
        else
          t.idx = {f.a, f.b};
        t.ext = v;
      } else {
        t.idx = {f.a, f.b};
        t.ext = &F;  // symmetric, orientation free
      }
      live.push_back(std::move(t));
    }
    if (needs_input_ && input_slots_.empty()) scalar *= (*v)(0, 0);

    bool dead = false;
    for (int x : part.elim_order) {
      // gather tensors touching x
      std::vector<LiveTensor> touching;
      std::vector<LiveTensor> rest;
      for (auto& t : live) {
        if (std::find(t.idx.begin(), t.idx.end(), x) != t.idx.end())
          touching.push_back(std::move(t));
        else
          rest.push_back(std::move(t));
      }
      live = std::move(rest);

      Eigen::VectorXd w;  // diagonal weight over x
      bool have_w = false;
      // matrices keyed by their other block
      struct MatRef {
        int other;
        const Eigen::MatrixXd* m;
        bool x_is_row;
        Eigen::MatrixXd held;  // for Hadamard-accumulated data
      };
      std::vector<MatRef> mats;
      mats.reserve(touching.size());
      for (auto& t : touching) {
        if (t.idx.size() == 1) {
          if (!have_w) {
            w = t.data().col(0);
            have_w = true;
          } else {
            w.array() *= t.data().col(0).array();
          }
          continue;
        }
        int other = (t.idx[0] == x) ? t.idx[1] : t.idx[0];
        bool x_row = (t.idx[0] == x);
        auto it = std::find_if(mats.begin(), mats.end(),
                               [&](const MatRef& m) { return m.other == other; });
        if (it == mats.end()) {
          mats.push_back(MatRef{other, nullptr, x_row, {}});
          if (t.ext) {
            mats.back().m = t.ext;
          } else {
            mats.back().held = std::move(t.own);
            mats.back().m = &mats.back().held;
          }
        } else {
          // Hadamard-combine onto an owned copy oriented x-as-rows
          Eigen::MatrixXd acc;
          if (it->x_is_row)
            acc = *(it->m);
          else
            acc = it->m->transpose();
          if (x_row)
            acc.array() *= t.data().array();
          else
            acc.array() *= t.data().transpose().array();
          it->held = std::move(acc);
          it->m = &it->held;
          it->x_is_row = true;
        }
      }

      LiveTensor result;
      if (mats.empty()) {
        double s = have_w ? w.sum() : static_cast<double>(n);
        scalar *= s;
        if (s == 0.0) {
          dead = true;
          break;
        }
        continue;
      }
      if (mats.size() == 1) {
        const auto& mr = mats[0];
        Eigen::VectorXd r;
        if (have_w)
          r.noalias() = mr.x_is_row ? Eigen::VectorXd(mr.m->transpose() * w)
                                    : Eigen::VectorXd((*mr.m) * w);
        else
          r = mr.x_is_row ? Eigen::VectorXd(mr.m->colwise().sum().transpose())
                          : Eigen::VectorXd(mr.m->rowwise().sum());
        result.idx = {mr.other};
        result.own = std::move(r);
        live.push_back(std::move(result));
        continue;
      }
      if (mats.size() == 2) {
        // R[y,z] = sum_x w[x] M1[x,y] M2[x,z]
        auto as_x_rows = [&](const MatRef& mr) -> Eigen::MatrixXd {
          return mr.x_is_row ? *mr.m : Eigen::MatrixXd(mr.m->transpose());
        };
        Eigen::MatrixXd m1 = as_x_rows(mats[0]);
        if (have_w) m1.array().colwise() *= w.array();
        Eigen::MatrixXd m2 = as_x_rows(mats[1]);
        Eigen::MatrixXd r(n, n);
        r.noalias() = m1.transpose() * m2;
        result.idx = {mats[0].other, mats[1].other};
        result.own = std::move(r);
        live.push_back(std::move(result));
        continue;
      }
      throw std::logic_error("elimination step with more than two neighbor blocks");
    }
    if (dead) continue;

    // remaining tensors only involve free blocks
    if (fc == 0) {
      double acc = scalar;
      for (auto& t : live) acc *= t.data()(0, 0);
      out(0, 0) += part.mu * acc;
      continue;
    }
    if (fc == 1) {
      Eigen::ArrayXd acc = Eigen::ArrayXd::Constant(n, scalar);
      for (auto& t : live) acc *= t.data().col(0).array();
      out.col(0).array() += part.mu * acc;
      continue;
    }
    const int f0 = part.free_block[0], f1 = part.free_block[1];
    Eigen::ArrayXd r = Eigen::ArrayXd::Constant(n, 1.0);
    Eigen::ArrayXd c = Eigen::ArrayXd::Constant(n, 1.0);
    Eigen::MatrixXd had;
    bool have_had = false;
    for (auto& t : live) {
      if (t.idx.size() == 1) {
        if (t.idx[0] == f0)
          r *= t.data().col(0).array();
        else
          c *= t.data().col(0).array();
        continue;
      }
      Eigen::MatrixXd m = (t.idx[0] == f0 && t.idx[1] == f1)
                              ? t.data()
                              : Eigen::MatrixXd(t.data().transpose());
      if (!have_had) {
        had = std::move(m);
        have_had = true;
      } else {
        had.array() *= m.array();
      }
    }
    if (have_had) {
      had.array().colwise() *= r;
      had.array().rowwise() *= c.transpose();
      out += (part.mu * scalar) * had;
    } else {
      out.noalias() += (part.mu * scalar) * (r.matrix() * c.matrix().transpose());
    }
  }
  return out;
}

}  // namespace gml
