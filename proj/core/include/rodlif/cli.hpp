#pragma once

#include <string>

namespace rodlif::cli {

// Run configuration shared by the subcommands. Config-file values are
// overridden by command-line flags.
struct RunConfig {
  std::string mat1;  // rod 1 material card
  std::string mat2;  // rod 2 material card
  std::string mat3;  // medium material card
  double radius1 = 1e-9;  // m
  double radius2 = 1e-9;  // m
  double temperature = 300.0;  // K
  std::string mode = "all";    // retarded | nonretarded | n0 | all (energy command)
  double rmin = 4e-9;          // m
  double rmax = 1e-5;          // m
  int points_per_decade = 16;
  double rel_tol = 1e-8;
  double abs_floor = 1e-35;
  int max_matsubara_n = 20000;
  double k_upper_multiplier = 60.0;
  int threads = 1;
  std::string out;             // output path; empty = stdout
  double xi_min = 1e11;        // rad/s (crossings, epsilon)
  double xi_max = 1e18;        // rad/s
  int xi_points_per_decade = 32;  // epsilon grid density
  double separation = 1e-7;    // m (energy command)
};

// Parse a sectioned key-value config file ([rod1], [rod2], [medium], [sweep],
// [run], [xi]) into cfg. Throws std::runtime_error naming the offending
// field.
void apply_config_file(const std::string& path, RunConfig& cfg);

// Exit codes: 0 success, 1 configuration/data error, 2 numerical
// non-convergence.
int run(int argc, const char* const* argv);

}  // namespace rodlif::cli
