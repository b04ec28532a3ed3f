#pragma once

#include <string>
#include <vector>

#include "gml/shape.hpp"

namespace gml {

struct BoundParams {
  double n = 0;
  double d = 0;
  int q = 1;
  double c_norm = 1.0;
  double epsilon = 0.0;
  double q_tau = 0;  // per-walk appearance budget 2 q |V(tau)|; 0 = derive on use

  double p() const { return d / n; }
  BoundParams for_shape(const Shape& s) const {
    BoundParams b = *this;
    b.q_tau = 2.0 * q * s.num_vertices;
    return b;
  }
  static int default_q(int n, const Shape& s);
};

enum class StepLabel { F, S, R, H, Singleton };
using StepLabeling = std::vector<StepLabel>;  // aligned with Shape::edges
char step_label_char(StepLabel l);

struct SeparatorFactors {
  std::vector<int> separator;
  double vertex_factor = 1;    // (sqrt(n) q)^{|V \ S|}
  double edge_factor = 1;      // ((1-p)/p)^{|E(S)|/2}
  double isolated_factor = 1;  // sqrt(n)^{|I|}
  double float_factor = 1;     // sqrt(n) per tree-like floating component off S
  double cnorm_factor = 1;     // c_norm^{|E|}
  double total = 1;
};

struct NormBoundReport {
  double value = 0;
  SeparatorFactors best;
  std::vector<SeparatorFactors> per_separator;  // filled when keep_all
  std::vector<std::string> warnings;
  bool regime_warning = false;
};

/// B_q(tau) maximized over all separators. include_float = false evaluates the
/// user-friendly (float-free) variant of the bound.
NormBoundReport closed_form_bound(const Shape& s, const BoundParams& params,
                                  bool include_float = true, bool keep_all = false);

double step_value(StepLabel label, const BoundParams& params);

enum class VertexAppearance { first_and_last_same_block, first_or_last, middle };
double vertex_cost(VertexAppearance kind, const BoundParams& params);

/// Inclusion rules: U∩V; H-incident; F-and-R-incident; U vertices on F/S;
/// V vertices on R; vertices on surprise (S) steps.
std::vector<int> build_separator_from_labeling(const Shape& s, const StepLabeling& l);

double block_value(const Shape& s, const StepLabeling& l, const BoundParams& params);
double block_value_sum(const Shape& s, const BoundParams& params);

/// Per-labeling table for reporting.
std::vector<std::pair<std::string, double>> block_value_table(const Shape& s,
                                                              const BoundParams& params);

struct WalkSummary {
  int num_surprise = 0;
  int num_singleton = 0;
  int num_nonsingleton = 0;   // distinct edges appearing at least twice
  int total_multiplicity = 0; // sum of multiplicities over all edges
};

struct WalkValueBound {
  double unscaled = 0;
  double scaled = 0;
};

WalkValueBound walk_value_bound(const WalkSummary& w, const BoundParams& params);

}  // namespace gml
