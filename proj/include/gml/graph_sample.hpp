#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gml {

enum class GraphModel { erdos_renyi, d_regular };

std::string model_name(GraphModel m);
GraphModel model_from_name(const std::string& name);

/// p-biased edge character values. chi(1) = sqrt((1-p)/p), chi(0) = -sqrt(p/(1-p)):
/// mean 0 and variance 1 per edge under G(n, p).
struct CharacterTable {
  double p = 0;
  double chi_present = 0;
  double chi_absent = 0;
  static CharacterTable for_p(double p);
};

struct GraphSample {
  int n = 0;
  GraphModel model = GraphModel::erdos_renyi;
  double d = 0;  // target degree; p = d/n always
  std::uint64_t seed = 0;
  std::vector<std::pair<int, int>> edges;  // sorted (lo, hi)

  double p() const { return d / n; }
  CharacterTable chars() const { return CharacterTable::for_p(p()); }
  bool has_edge(int i, int j) const;
  int degree(int v) const { return degrees_[v]; }
  std::size_t edge_count() const { return edges.size(); }

  void finalize();  // rebuilds the membership set and degree cache

 private:
  std::unordered_set<std::uint64_t> edge_keys_;
  std::vector<int> degrees_;
};

GraphSample sample_er(int n, double d, std::uint64_t seed);

/// Circulant start, then `swaps` accepted double-edge swaps (default 100*n*d).
GraphSample sample_regular(int n, int d, std::uint64_t seed, long long swaps = -1);

/// Every labeled simple d-regular graph on n vertices, exactly once. n <= 10.
std::vector<GraphSample> enumerate_regular(int n, int d);

double chi(const GraphSample& g, int i, int j);
double chi_set(const GraphSample& g, const std::vector<std::pair<int, int>>& s);

/// All 2^C(n,2) graphs on n vertices with G(n,p) weights; n <= 6.
class ExactErEnsemble {
 public:
  ExactErEnsemble(int n, double p);
  double expectation(const std::function<double(const GraphSample&)>& stat) const;
  const std::vector<GraphSample>& samples() const { return samples_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<GraphSample> samples_;
  std::vector<double> weights_;
};

double exact_expectation_er(int n, double p,
                            const std::function<double(const GraphSample&)>& stat);

/// Uniform average over enumerate_regular(n, d).
double exact_expectation_regular(int n, int d,
                                 const std::function<double(const GraphSample&)>& stat);

std::string serialize_graph(const GraphSample& g);
GraphSample parse_graph(const std::string& text);

}  // namespace gml
