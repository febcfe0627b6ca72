#include "perrk/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "perrk/stepper.hpp"

namespace perrk {

UpdateMatrix assemble_update_matrix(const PartitionFamily& family, const PartitionMap& map,
                                    const Semidiscretization& semi, double dt, double gamma) {
  PERRK_REQUIRE(semi.physics().name() == "advection", "update matrix needs linear physics");
  const int M = semi.num_dofs();
  UpdateMatrix result;
  result.gamma = gamma;
  result.dt = dt;
  result.D.resize(M, M);

  PerkStepOptions opts;
  opts.relaxation = nullptr;
  opts.gamma_override = gamma;
  StateVector unit(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    std::fill(unit.begin(), unit.end(), 0.0);
    unit[j] = 1.0;
    double t = 0.0;
    perk_step(unit, t, dt, family, map, semi, opts);
    for (int i = 0; i < M; ++i) result.D(i, j) = unit[i];
  }
  return result;
}

MonotonicityMetrics monotonicity_metrics(const Eigen::MatrixXd& D) {
  MonotonicityMetrics m;
  m.min_entry = D.minCoeff();
  m.max_entry = D.maxCoeff();
  m.max_row_sum_deviation = (D.rowwise().sum().array() - 1.0).abs().maxCoeff();
  return m;
}

double spectral_radius(const Eigen::MatrixXd& D) {
  const Spectrum spec = eigenvalues_dense(D);
  double rho = 0.0;
  for (auto z : spec.eigenvalues) rho = std::max(rho, std::abs(z));
  return rho;
}

void save_matrix(const Eigen::MatrixXd& D, const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  char buf[40];
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index j = 0; j < D.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", D(i, j));
      os << (j ? " " : "") << buf;
    }
    os << "\n";
  }
}

}  // namespace perrk
