#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gml/corpus.hpp"
#include "gml/graph_matrix.hpp"
#include "gml/tuple_index.hpp"

using namespace gml;

namespace {

Eigen::MatrixXd dense_of(const Shape& s, const GraphSample& g, BuildMode mode) {
  return build_matrix(s, g, mode).to_dense();
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("tuple index is a bijection") {
  for (int n : {4, 6, 9}) {
    for (int arity : {0, 1, 2, 3}) {
      TupleIndex ti(n, arity);
      long long expect = 1;
      for (int i = 0; i < arity; ++i) expect *= (n - i);
      CHECK(ti.size() == expect);
      for (long long idx = 0; idx < ti.size(); ++idx) {
        auto t = ti.decode(idx);
        CHECK(ti.encode(t) == idx);
      }
    }
  }
  TupleIndex ti(5, 2);
  CHECK(ti.encode({0, 1}) == 0);
  CHECK(ti.encode({1, 0}) == 4);  // after (0,1),(0,2),(0,3),(0,4)
  CHECK_THROWS(ti.encode({2, 2}));
}

TEST_CASE("identity shape materializes the identity") {
  auto g = sample_er(12, 3, 5);
  auto m = build_matrix(corpus_shape("identity"), g);
  CHECK(max_abs_diff(m.to_dense(), Eigen::MatrixXd::Identity(12, 12)) == 0.0);
}

TEST_CASE("line shape entries are the edge characters with zero diagonal") {
  auto g = sample_er(10, 3, 17);
  auto m = build_matrix(corpus_shape("line"), g);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      double want = (i == j) ? 0.0 : chi(g, i, j);
      CHECK(m.entry({i}, {j}) == doctest::Approx(want).epsilon(1e-14));
    }
  CHECK(m.entry({3}, {3}) == 0.0);
}

TEST_CASE("z-shape dimension and entry formula") {
  const int n = 8;
  auto g = sample_regular(n, 3, 2);
  auto m = build_matrix(corpus_shape("z_shape"), g, BuildMode::explicit_triplets);
  CHECK(m.rows() == n * (n - 1));
  CHECK(m.cols() == n * (n - 1));
  // entry[(a,b),(c,d)] = sum_t chi(ab) chi(bt) chi(ct) chi(cd), t outside {a,b,c,d}
  int a = 0, b = 1, c = 2, d = 3;
  double expect = 0;
  for (int t = 0; t < n; ++t) {
    if (t == a || t == b || t == c || t == d) continue;
    expect += chi(g, a, b) * chi(g, b, t) * chi(g, c, t) * chi(g, c, d);
  }
  CHECK(m.entry({a, b}, {c, d}) == doctest::Approx(expect).epsilon(1e-12));
  // overlapping tuples are allowed when a single embedding realizes them
  CHECK(m.entry({0, 1}, {0, 2}) == 0.0);  // u1 and v1 are distinct shape vertices
}

TEST_CASE("scalar floating-edge shape sums over ordered embeddings") {
  const int n = 9;
  auto g = sample_er(n, 2, 21);
  auto m = build_matrix(corpus_shape("floating_edge"), g);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  double direct = 0;  // independent direct summation over ordered pairs
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) direct += chi(g, a, b);
  CHECK(m.entry({}, {}) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("contraction engine agrees with explicit enumeration on the corpus") {
  const int n = 9;
  for (const auto& ns : corpus()) {
    for (auto model : {GraphModel::erdos_renyi, GraphModel::d_regular}) {
      for (std::uint64_t seed : {1ULL, 2ULL}) {
        GraphSample g = model == GraphModel::erdos_renyi ? sample_er(n, 3, seed)
                                                         : sample_regular(n, 4, seed);
        auto ex = dense_of(ns.shape, g, BuildMode::explicit_triplets);
        auto im = dense_of(ns.shape, g, BuildMode::implicit_contraction);
        INFO("shape ", ns.name, " model ", model_name(g.model), " seed ", seed);
        CHECK(max_abs_diff(ex, im) <= 1e-10 * std::max(1.0, ex.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("explicit and implicit matvec agree on the z-shape at n=12") {
  const int n = 12;
  auto g = sample_regular(n, 4, 9);
  auto ex = build_matrix(corpus_shape("z_shape"), g, BuildMode::explicit_triplets);
  auto im = build_matrix(corpus_shape("z_shape"), g, BuildMode::implicit_contraction);
  CHECK(std::string(im.storage_kind()) == "implicit");
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(ex.cols());
  for (long long i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  Eigen::VectorXd ye = ex.matvec(v), yi = im.matvec(v);
  CHECK((ye - yi).cwiseAbs().maxCoeff() <= 1e-10 * ye.cwiseAbs().maxCoeff());
  Eigen::VectorXd te = ex.matvec_transpose(v), ti = im.matvec_transpose(v);
  CHECK((te - ti).cwiseAbs().maxCoeff() <= 1e-10 * te.cwiseAbs().maxCoeff());
}

TEST_CASE("matvec basics") {
  const int n = 10;
  auto g = sample_er(n, 3, 31);
  auto id = build_matrix(corpus_shape("identity"), g);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1, n);
  CHECK((id.matvec(v) - v).cwiseAbs().maxCoeff() == 0.0);

  auto line = build_matrix(corpus_shape("line"), g);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd sums = line.matvec(ones);
  for (int i = 0; i < n; ++i) {
    double expect = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) expect += chi(g, i, j);
    CHECK(sums[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("transpose shape materializes the transposed matrix") {
  const int n = 8;
  for (const auto& ns : corpus()) {
    for (auto model : {GraphModel::erdos_renyi, GraphModel::d_regular}) {
      for (std::uint64_t seed : {11ULL, 12ULL}) {
        GraphSample g = model == GraphModel::erdos_renyi ? sample_er(n, 3, seed)
                                                         : sample_regular(n, 3, seed);
        auto a = dense_of(ns.shape, g, BuildMode::automatic);
        auto b = dense_of(transpose(ns.shape), g, BuildMode::automatic);
        INFO("shape ", ns.name);
        CHECK(max_abs_diff(a.transpose(), b) <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("vertex relabeling acts equivariantly on rows and columns") {
  const int n = 8;
  auto g = sample_regular(n, 3, 19);
  std::vector<int> perm{3, 1, 4, 0, 6, 2, 7, 5};
  GraphSample h = g;
  h.edges.clear();
  for (auto [a, b] : g.edges) h.edges.emplace_back(perm[a], perm[b]);
  h.finalize();

  for (const char* name : {"line", "z_shape", "star3"}) {
    const Shape& s = corpus_shape(name);
    auto mg = build_matrix(s, g, BuildMode::explicit_triplets);
    auto mh = build_matrix(s, h, BuildMode::explicit_triplets);
    TupleIndex rows = mg.row_index(), cols = mg.col_index();
    for (long long r = 0; r < mg.rows(); ++r) {
      auto rt = rows.decode(r);
      auto rp = rt;
      for (auto& x : rp) x = perm[x];
      for (long long c = 0; c < mg.cols(); ++c) {
        auto ct = cols.decode(c);
        auto cp = ct;
        for (auto& x : cp) x = perm[x];
        CHECK(mg.entry(rt, ct) == doctest::Approx(mh.entry(rp, cp)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("embedding term counts follow the falling factorial") {
  const int n = 10;
  auto g = sample_er(n, 3, 41);
  // z-shape: one middle vertex, boundaries disjoint: n - 4 embeddings per entry
  CHECK(entry_term_count(corpus_shape("z_shape"), g, {0, 1}, {2, 3}) == n - 4);
  // star3: center + extra leaf middle: (n-2)(n-3)
  CHECK(entry_term_count(corpus_shape("star3"), g, {0}, {1}) ==
        static_cast<long long>(n - 2) * (n - 3));
  // total explicit terms = P(n, |V(tau)|)
  auto m = build_matrix(corpus_shape("star3"), g, BuildMode::explicit_triplets);
  CHECK(m.term_count() == predicted_terms(corpus_shape("star3"), n));
  CHECK(predicted_terms(corpus_shape("star3"), n) ==
        static_cast<long long>(n) * (n - 1) * (n - 2) * (n - 3));
}

TEST_CASE("explicit mode refuses oversized builds with advice") {
  auto g = sample_er(200, 5, 1);
  try {
    build_matrix(corpus_shape("z_shape"), g, BuildMode::explicit_triplets);
    FAIL("expected a budget error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("implicit") != std::string::npos);
  }
}

TEST_CASE("entry rejects malformed tuples") {
  auto g = sample_er(8, 2, 2);
  auto m = build_matrix(corpus_shape("z_shape"), g, BuildMode::explicit_triplets);
  CHECK_THROWS(m.entry({0}, {1, 2}));
  CHECK_THROWS(m.entry({0, 0}, {1, 2}));
  CHECK_THROWS(m.entry({0, 9}, {1, 2}));
}
