#ifndef PERRK_ANALYSIS_HPP
#define PERRK_ANALYSIS_HPP

#include <Eigen/Dense>
#include <string>

#include "perrk/butcher.hpp"
#include "perrk/common.hpp"
#include "perrk/semidisc.hpp"
#include "perrk/specopt.hpp"

namespace perrk {

/// Fully discrete one-step map D(gamma) of a linear semidiscretization.
struct UpdateMatrix {
  Eigen::MatrixXd D;
  double gamma = 1.0;
  double dt = 0.0;
};

/// Column j is one P-ERK step (relaxation disabled, gamma supplied) applied
/// to the j-th unit vector; exact by linearity. Rejects nonlinear physics.
UpdateMatrix assemble_update_matrix(const PartitionFamily& family, const PartitionMap& map,
                                    const Semidiscretization& semi, double dt, double gamma);

struct MonotonicityMetrics {
  double min_entry = 0.0;
  double max_entry = 0.0;
  double max_row_sum_deviation = 0.0;  // from 1
};

MonotonicityMetrics monotonicity_metrics(const Eigen::MatrixXd& D);

double spectral_radius(const Eigen::MatrixXd& D);

/// Dense ASCII dump, one row per line.
void save_matrix(const Eigen::MatrixXd& D, const std::string& path);

}  // namespace perrk

#endif
