// clusterkit command line front end: clustering algorithms, synthetic data
// generators and image patch features over plain CSV/PPM files.
//
// Exit codes: 0 success, 1 runtime error (I/O, parse, numeric), 2 usage.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterkit/csv.hpp"
#include "clusterkit/dbscan.hpp"
#include "clusterkit/generate.hpp"
#include "clusterkit/gmm.hpp"
#include "clusterkit/kmeans.hpp"
#include "clusterkit/ppm.hpp"

namespace {

using clusterkit::RngSeed;
using json = nlohmann::ordered_json;

/// Flag-value errors CLI11 cannot express itself; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_report(const std::string& path, const json& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << report.dump(2) << '\n';
  out.flush();
  if (!out.good()) {
    throw std::runtime_error(path + ": write failed");
  }
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string cell =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": invalid number '" + cell + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

struct KmeansArgs {
  std::string input;
  int k = 1;
  std::string init = "random";
  int restarts = 1;
  std::uint64_t seed = 0;
  int max_iter = 300;
  std::string tol_text;  // raw --tol value; empty means "use the default"
  std::optional<double> tol;
  std::string out;
  std::string report;
};

int run_kmeans(const KmeansArgs& args) {
  const clusterkit::Dataset data = clusterkit::load_csv(args.input);
  clusterkit::KmeansOptions opts;
  opts.max_iter = args.max_iter;
  opts.rel_tol = args.tol;
  const auto strategy = args.init == "pca"
                            ? clusterkit::InitStrategy::kPcaPartition
                            : clusterkit::InitStrategy::kRandomPoints;

  Stopwatch watch;
  const clusterkit::HardClustering result = clusterkit::kmeans_multi_restart(
      data, args.k, args.restarts, strategy, RngSeed{args.seed}, opts);
  const double wall_ms = watch.elapsed_ms();

  clusterkit::save_assignments_csv(args.out, result.assignments);
  if (!args.report.empty()) {
    json report;
    report["algorithm"] = "kmeans";
    report["parameters"] = {
        {"input", args.input},       {"k", args.k},
        {"init", args.init},         {"restarts", args.restarts},
        {"seed", args.seed},         {"max_iter", args.max_iter},
        {"tol", args.tol ? json(*args.tol) : json(nullptr)}};
    report["final_objective"] = result.final_error();
    report["trajectory"] = result.error_trajectory;
    report["iterations"] = result.iterations;
    report["converged"] = result.converged;
    report["wall_time_ms"] = wall_ms;
    report["seed"] = args.seed;
    write_report(args.report, report);
  }
  std::printf("kmeans: error=%.17g iterations=%d converged=%s\n",
              result.final_error(), result.iterations,
              result.converged ? "true" : "false");
  return 0;
}

struct GmmArgs {
  std::string input;
  int k = 1;
  int restarts = 1;
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-8;
  std::string mode = "full";
  std::string out;
  std::string report;
};

clusterkit::GmmOptions parse_gmm_mode(const GmmArgs& args) {
  clusterkit::GmmOptions opts;
  opts.max_iter = args.max_iter;
  opts.tol = args.tol;
  if (args.mode == "full") {
    opts.mode = clusterkit::CovarianceMode::kFull;
    return opts;
  }
  const std::string prefix = "isotropic:";
  if (args.mode.rfind(prefix, 0) == 0) {
    const std::string value = args.mode.substr(prefix.size());
    try {
      std::size_t used = 0;
      opts.sigma2 = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--mode: invalid variance '" + value + "'");
    }
    if (!(opts.sigma2 > 0.0)) {
      throw UsageError("--mode: variance must be positive");
    }
    opts.mode = clusterkit::CovarianceMode::kFixedIsotropic;
    return opts;
  }
  throw UsageError("--mode: expected 'full' or 'isotropic:<sigma2>'");
}

int run_gmm(const GmmArgs& args) {
  const clusterkit::GmmOptions opts = parse_gmm_mode(args);
  const clusterkit::Dataset data = clusterkit::load_csv(args.input);

  Stopwatch watch;
  const clusterkit::SoftClustering result = clusterkit::em_multi_restart(
      data, args.k, args.restarts, RngSeed{args.seed}, opts);
  const double wall_ms = watch.elapsed_ms();

  const std::vector<int> hard =
      clusterkit::hard_assignments_from_soft(result);
  clusterkit::save_assignments_csv(args.out, hard, &result.responsibilities);
  if (!args.report.empty()) {
    json report;
    report["algorithm"] = "gmm";
    report["parameters"] = {{"input", args.input},
                            {"k", args.k},
                            {"restarts", args.restarts},
                            {"seed", args.seed},
                            {"max_iter", args.max_iter},
                            {"tol", args.tol},
                            {"mode", args.mode}};
    report["final_objective"] = result.final_nll();
    report["trajectory"] = result.nll_trajectory;
    report["iterations"] = result.iterations;
    report["converged"] = result.converged;
    report["wall_time_ms"] = wall_ms;
    report["seed"] = args.seed;
    write_report(args.report, report);
  }
  std::printf("gmm: nll=%.17g iterations=%d converged=%s\n",
              result.final_nll(), result.iterations,
              result.converged ? "true" : "false");
  return 0;
}

struct DbscanArgs {
  std::string input;
  double eps = 0.0;
  int min_near = 1;
  std::string out;
  std::string report;
};

int run_dbscan(const DbscanArgs& args) {
  const clusterkit::Dataset data = clusterkit::load_csv(args.input);

  Stopwatch watch;
  const clusterkit::DbscanLabels result =
      clusterkit::dbscan(data, {args.eps, args.min_near});
  const double wall_ms = watch.elapsed_ms();

  clusterkit::save_assignments_csv(args.out, result.labels);
  int n_noise = 0;
  for (int label : result.labels) {
    if (label == clusterkit::DbscanLabels::kNoise) ++n_noise;
  }
  if (!args.report.empty()) {
    json report;
    report["algorithm"] = "dbscan";
    report["parameters"] = {{"input", args.input},
                            {"eps", args.eps},
                            {"min_near", args.min_near}};
    report["final_objective"] = nullptr;  // no objective function
    report["trajectory"] = json::array();
    report["iterations"] = 1;
    report["converged"] = true;
    report["n_clusters"] = result.n_clusters;
    report["n_noise"] = n_noise;
    report["wall_time_ms"] = wall_ms;
    report["seed"] = nullptr;
    write_report(args.report, report);
  }
  std::printf("dbscan: clusters=%d noise=%d\n", result.n_clusters, n_noise);
  return 0;
}

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
  // blobs
  int k = 3;
  int m = 300;
  double sd = 0.5;
  double sep = 6.0;
  std::string priors;
  // rings
  int m_per_ring = 100;
  std::string radii = "1,5";
  double noise_sd = 0.05;
};

int run_gen(const GenArgs& args) {
  std::optional<clusterkit::LabeledDataset> generated;
  if (args.kind == "blobs") {
    std::vector<double> priors;
    if (!args.priors.empty()) {
      priors = parse_double_list(args.priors, "--priors");
      double sum = 0.0;
      for (double p : priors) {
        if (p < 0.0) throw UsageError("--priors: must be nonnegative");
        sum += p;
      }
      if (!(sum > 0.0)) throw UsageError("--priors: must not all be zero");
      for (double& p : priors) p /= sum;
    }
    generated = clusterkit::generate_blobs(args.k, args.m, args.sep, args.sd,
                                           priors, RngSeed{args.seed});
  } else if (args.kind == "rings") {
    const std::vector<double> radii =
        parse_double_list(args.radii, "--radii");
    generated = clusterkit::generate_rings(args.m_per_ring, radii,
                                           args.noise_sd, RngSeed{args.seed});
  } else {
    throw UsageError("--kind: expected 'blobs' or 'rings'");
  }

  clusterkit::save_dataset_csv(args.out, generated->data);
  if (!args.labels_out.empty()) {
    clusterkit::save_assignments_csv(args.labels_out, generated->labels);
  }
  std::printf("gen: wrote %ld points to %s\n",
              static_cast<long>(generated->data.size()), args.out.c_str());
  return 0;
}

struct PatchesArgs {
  std::string input;
  int patch_w = 1;
  int patch_h = 1;
  std::string columns = "red,green,blue";
  std::string out;
};

int run_patches(const PatchesArgs& args) {
  std::vector<Eigen::Index> selected;
  std::size_t start = 0;
  const std::string& text = args.columns;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string name =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    if (name == "red") {
      selected.push_back(0);
    } else if (name == "green") {
      selected.push_back(1);
    } else if (name == "blue") {
      selected.push_back(2);
    } else {
      throw UsageError("--columns: unknown channel '" + name + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  const clusterkit::PatchGrid grid =
      clusterkit::extract_patch_features(args.input, args.patch_w,
                                         args.patch_h);
  clusterkit::Matrix out(grid.features.size(),
                         static_cast<Eigen::Index>(selected.size()));
  for (std::size_t j = 0; j < selected.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) =
        grid.features.points().col(selected[j]);
  }
  clusterkit::save_dataset_csv(args.out, clusterkit::Dataset(std::move(out)));
  std::printf("patches: %ld patches from %dx%d image\n",
              static_cast<long>(grid.features.size()), grid.image_width,
              grid.image_height);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clustering toolkit: k-means, Gaussian mixtures and DBSCAN"};
  app.require_subcommand(1);

  KmeansArgs kmeans_args;
  CLI::App* kmeans = app.add_subcommand("kmeans", "hard clustering");
  kmeans->add_option("input", kmeans_args.input, "input CSV")->required();
  kmeans->add_option("--k", kmeans_args.k, "number of clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  kmeans->add_option("--init", kmeans_args.init, "initialization")
      ->check(CLI::IsMember({"random", "pca"}));
  kmeans->add_option("--restarts", kmeans_args.restarts, "restart count")
      ->check(CLI::PositiveNumber);
  kmeans->add_option("--seed", kmeans_args.seed, "RNG seed");
  kmeans->add_option("--max-iter", kmeans_args.max_iter, "iteration guard")
      ->check(CLI::PositiveNumber);
  kmeans
      ->add_option("--tol", kmeans_args.tol_text,
                   "stop on relative error decrease below this threshold "
                   "(1e-6 when given without a value; off otherwise)")
      ->expected(0, 1);
  kmeans->add_option("--out", kmeans_args.out, "assignments CSV")->required();
  kmeans->add_option("--report", kmeans_args.report, "run report JSON");

  GmmArgs gmm_args;
  CLI::App* gmm = app.add_subcommand("gmm", "soft clustering via EM");
  gmm->add_option("input", gmm_args.input, "input CSV")->required();
  gmm->add_option("--k", gmm_args.k, "number of components")
      ->required()
      ->check(CLI::PositiveNumber);
  gmm->add_option("--restarts", gmm_args.restarts, "restart count")
      ->check(CLI::PositiveNumber);
  gmm->add_option("--seed", gmm_args.seed, "RNG seed");
  gmm->add_option("--max-iter", gmm_args.max_iter, "EM iteration guard")
      ->check(CLI::PositiveNumber);
  gmm->add_option("--tol", gmm_args.tol, "relative NLL stop threshold");
  gmm->add_option("--mode", gmm_args.mode,
                  "covariances: 'full' or 'isotropic:<sigma2>'");
  gmm->add_option("--out", gmm_args.out, "responsibilities CSV")->required();
  gmm->add_option("--report", gmm_args.report, "run report JSON");

  DbscanArgs dbscan_args;
  CLI::App* dbscan = app.add_subcommand("dbscan", "density-based clustering");
  dbscan->add_option("input", dbscan_args.input, "input CSV")->required();
  dbscan->add_option("--eps", dbscan_args.eps, "neighborhood radius")
      ->required()
      ->check(CLI::PositiveNumber);
  dbscan
      ->add_option("--min-near", dbscan_args.min_near,
                   "neighborhood size making a point a core point")
      ->required()
      ->check(CLI::PositiveNumber);
  dbscan->add_option("--out", dbscan_args.out, "labels CSV")->required();
  dbscan->add_option("--report", dbscan_args.report, "run report JSON");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "synthetic dataset generators");
  gen->add_option("--kind", gen_args.kind, "'blobs' or 'rings'")->required();
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--out", gen_args.out, "dataset CSV")->required();
  gen->add_option("--labels-out", gen_args.labels_out,
                  "optional generating-labels CSV");
  gen->add_option("--k", gen_args.k, "blobs: number of blobs")
      ->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_args.m, "blobs: total points")
      ->check(CLI::PositiveNumber);
  gen->add_option("--sd", gen_args.sd, "blobs: per-blob standard deviation")
      ->check(CLI::PositiveNumber);
  gen->add_option("--sep", gen_args.sep, "blobs: circle radius of the means");
  gen->add_option("--priors", gen_args.priors,
                  "blobs: comma-separated priors (normalized)");
  gen->add_option("--m-per-ring", gen_args.m_per_ring,
                  "rings: points per ring")
      ->check(CLI::PositiveNumber);
  gen->add_option("--radii", gen_args.radii,
                  "rings: comma-separated increasing radii");
  gen->add_option("--noise-sd", gen_args.noise_sd,
                  "rings: radial noise standard deviation");

  PatchesArgs patches_args;
  CLI::App* patches =
      app.add_subcommand("patches", "PPM image patch features");
  patches->add_option("input", patches_args.input, "input PPM (P3 or P6)")
      ->required();
  patches->add_option("--patch-w", patches_args.patch_w, "patch width")
      ->required()
      ->check(CLI::PositiveNumber);
  patches->add_option("--patch-h", patches_args.patch_h, "patch height")
      ->required()
      ->check(CLI::PositiveNumber);
  patches->add_option("--columns", patches_args.columns,
                      "channels to emit, e.g. red,blue");
  patches->add_option("--out", patches_args.out, "features CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kmeans->parsed()) {
      if (kmeans->count("--tol") > 0) {
        if (kmeans_args.tol_text.empty()) {
          kmeans_args.tol = 1e-6;
        } else {
          try {
            std::size_t used = 0;
            kmeans_args.tol = std::stod(kmeans_args.tol_text, &used);
            if (used != kmeans_args.tol_text.size()) {
              throw std::invalid_argument(kmeans_args.tol_text);
            }
          } catch (const std::exception&) {
            throw UsageError("--tol: invalid number '" +
                             kmeans_args.tol_text + "'");
          }
          if (*kmeans_args.tol < 0.0) {
            throw UsageError("--tol: must be nonnegative");
          }
        }
      }
      return run_kmeans(kmeans_args);
    }
    if (gmm->parsed()) return run_gmm(gmm_args);
    if (dbscan->parsed()) return run_dbscan(dbscan_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (patches->parsed()) return run_patches(patches_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
