#include <CLI11.hpp>

#include "gml/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gml: graph matrix laboratory for random regular inputs"};
  app.require_subcommand(1);

  std::string shape_arg;
  bool assert_mode = false;

  auto* validate = app.add_subcommand("validate-shape", "check a shape record");
  validate->add_option("--shape", shape_arg, "shape file or corpus name")->required();
  validate->add_flag("--assert", assert_mode, "exit 1 on violations");

  gml::cli::BuildMatrixOpts bm;
  auto* build = app.add_subcommand("build-matrix", "materialize a graph matrix");
  build->add_option("--shape", bm.shape)->required();
  build->add_option("--model", bm.model, "er | reg");
  build->add_option("--mode", bm.mode, "auto | explicit | implicit");
  build->add_option("--n", bm.n)->required();
  build->add_option("--d", bm.d)->required();
  build->add_option("--seed", bm.seed);
  build->add_option("--out", bm.out, "triplet text output");
  build->add_option("--graph-out", bm.graph_out, "edge-list output");

  gml::cli::BoundOpts bo;
  auto* bound = app.add_subcommand("bound", "closed-form norm bound");
  bound->add_option("--shape", bo.shape)->required();
  bound->add_option("--n", bo.n)->required();
  bound->add_option("--d", bo.d)->required();
  bound->add_option("--q", bo.q);
  bound->add_option("--c-norm", bo.c_norm);
  bound->add_flag("--per-labeling", bo.per_labeling);
  bound->add_option("--out", bo.out);

  gml::cli::VerifyNormOpts vn;
  auto* verify = app.add_subcommand("verify-norm", "empirical norms vs predicted bounds");
  verify->add_option("--shape", vn.shapes, "shape files or corpus names")->required();
  verify->add_option("--model", vn.model, "er | reg | both");
  verify->add_option("--n-list", vn.n_list)->required();
  verify->add_option("--d", vn.d);
  verify->add_option("--q", vn.q);
  verify->add_option("--seeds", vn.seeds);
  verify->add_option("--c-norm", vn.c_norm);
  verify->add_option("--seed-base", vn.seed_base);
  verify->add_option("--out", vn.out);
  verify->add_flag("--assert", vn.assert_mode);

  gml::cli::DistinguishOpts di;
  auto* dist = app.add_subcommand("distinguish", "scalar distinguisher statistics");
  dist->add_option("--kind", di.kind, "path2 | floating-edge");
  dist->add_option("--n-list", di.n_list)->required();
  dist->add_option("--d", di.d, "0 = ceil(ln(n)^2)");
  dist->add_option("--seeds", di.seeds);
  dist->add_option("--seed-base", di.seed_base);
  dist->add_option("--out", di.out);
  dist->add_flag("--assert", di.assert_mode);

  gml::cli::SosOpts so;
  auto* sos = app.add_subcommand("sos", "pseudo-calibrated moment matrix experiments");
  sos->add_option("--model", so.model, "er | reg | both");
  sos->add_option("--n", so.n);
  sos->add_option("--d", so.d);
  sos->add_option("--k", so.k, "< 0: floor(n / (sqrt(d) ln n))");
  sos->add_option("--dsos", so.dsos);
  sos->add_option("--dv", so.dv_extra, "extra vertex budget beyond |S|");
  sos->add_option("--dv-abs", so.dv_abs, "absolute vertex truncation");
  sos->add_option("--seeds", so.seeds);
  sos->add_option("--seed-base", so.seed_base);
  sos->add_option("--out", so.out);
  sos->add_flag("--assert", so.assert_mode);

  std::string oracle_check = "all";
  bool oracle_assert = false;
  auto* oracle = app.add_subcommand("oracle", "tiny-n exact checks");
  oracle->add_option("--check", oracle_check, "orthogonality | regular-chi | all");
  oracle->add_flag("--assert", oracle_assert);

  std::string dump_dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "list or dump built-in shapes");
  corpus_cmd->add_option("--dump", dump_dir, "write .shape files to this directory");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return gml::cli::run_validate_shape(shape_arg, assert_mode);
  if (build->parsed()) return gml::cli::run_build_matrix(bm);
  if (bound->parsed()) return gml::cli::run_bound(bo);
  if (verify->parsed()) return gml::cli::run_verify_norm(vn);
  if (dist->parsed()) return gml::cli::run_distinguish(di);
  if (sos->parsed()) return gml::cli::run_sos(so);
  if (oracle->parsed()) return gml::cli::run_oracle(oracle_check, oracle_assert);
  if (corpus_cmd->parsed()) return gml::cli::run_corpus(dump_dir);
  return 2;
}
