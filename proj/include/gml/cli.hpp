#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gml::cli {

// exit codes: 0 ok, 1 assertion-mode failure, 2 config error

int run_validate_shape(const std::string& shape, bool assert_mode);

struct BuildMatrixOpts {
  std::string shape;
  std::string model = "er";
  std::string mode = "auto";  // auto | explicit | implicit
  int n = 0;
  double d = 0;
  std::uint64_t seed = 0;
  std::string out;        // triplet text
  std::string graph_out;  // edge-list text
};
int run_build_matrix(const BuildMatrixOpts&);

struct BoundOpts {
  std::string shape;
  double n = 0, d = 0;
  int q = 0;  // 0 = default rule
  double c_norm = 1.0;
  bool per_labeling = false;
  std::string out;
};
int run_bound(const BoundOpts&);

struct VerifyNormOpts {
  std::vector<std::string> shapes;
  std::string model = "both";  // er | reg | both
  std::vector<int> n_list;
  double d = 64;
  int q = 0;  // 0 = default rule per n
  int seeds = 20;
  double c_norm = 1.0;
  std::uint64_t seed_base = 1;
  std::string out;
  bool assert_mode = false;
};
int run_verify_norm(const VerifyNormOpts&);

struct DistinguishOpts {
  std::string kind = "path2";
  std::vector<int> n_list;
  int d = 0;  // 0 = ceil(ln(n)^2) per n
  int seeds = 20;
  std::uint64_t seed_base = 1;
  std::string out;
  bool assert_mode = false;
};
int run_distinguish(const DistinguishOpts&);

struct SosOpts {
  std::string model = "reg";  // er | reg | both
  int n = 300;
  double d = 36;
  double k = -1;  // < 0: floor(n / (sqrt(d) ln n))
  int dsos = 2;
  int dv_extra = 3;
  int dv_abs = -1;  // >= 0 overrides the relative rule
  int seeds = 10;
  std::uint64_t seed_base = 1;
  std::string out;
  bool assert_mode = false;
};
int run_sos(const SosOpts&);

int run_oracle(const std::string& check, bool assert_mode);

int run_corpus(const std::string& dump_dir);  // empty: list names

}  // namespace gml::cli
