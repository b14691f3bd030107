#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heatlab::cli {

/// Everything a subcommand may read. Each command uses its own subset.
struct ExperimentConfig {
  std::string command;
  std::string profile = "affine:1,2";  // a, or the truth for reconstruct
  std::string profile2 = "const:1";    // a2 for propc
  std::string drive = "step:1";
  std::size_t nx = 401;
  std::size_t nt = 4000;
  double t_final = 5.0;
  double lambda_min = 0.25;
  double lambda_max = 25.0;
  std::size_t lambda_count = 40;
  std::string lambda_spacing = "log";  // log | linear
  std::string output_dir = "heatlab_out";
  std::uint64_t seed = 0;
  bool gnuplot = false;

  // spectrum
  std::size_t n_eigen = 10;
  // laplace
  std::string series;           // CSV t,value; empty: sample the drive on the grid
  std::string tail = "constant";  // zero | constant
  // propc
  std::string target = "x*(1-x)";
  std::size_t points = 2049;
  // reconstruct
  std::string end = "right";  // right | left
  std::string init = "const:1.5";
  std::string data;  // CSV t,value; empty: synthetic data from the truth profile
  std::size_t m = 9;
  double alpha = 1e-7;
  std::size_t max_iters = 40;
  double noise = 0.0;  // uniform noise level relative to max |data|
};

struct RunResult {
  std::vector<std::string> files;  // paths written
  std::vector<std::string> notes;  // one-line findings echoed to stdout
};

RunResult run_forward(const ExperimentConfig& cfg);
RunResult run_laplace(const ExperimentConfig& cfg);
RunResult run_spectrum(const ExperimentConfig& cfg);
RunResult run_nonuniq(const ExperimentConfig& cfg);
RunResult run_propc(const ExperimentConfig& cfg);
RunResult run_reconstruct(const ExperimentConfig& cfg);

/// Parses the command line and dispatches. Returns the process exit code:
/// 0 on success, 2 for usage errors and invalid or missing inputs, 1 for any
/// other failure.
int main(int argc, char** argv);

}  // namespace heatlab::cli
