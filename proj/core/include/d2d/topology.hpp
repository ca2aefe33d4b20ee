#pragma once

#include <cstdint>
#include <vector>

#include "d2d/sim_config.hpp"

namespace d2d {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Free-space pathloss power gain (lambda / (4 pi d))^2.
double pathloss_gain(double distance_m, double lambda_m);

// One cell realization: user positions plus the deterministic pathloss
// gain matrix. gain(m, n) is the power gain from user m's transmitter to
// user n's receiver; it depends only on distance, so the matrix is
// symmetric and the diagonal (no self-link) is held at zero.
class CellTopology {
 public:
  CellTopology(std::vector<Point> positions, double lambda_m, double noise_w);

  int num_users() const { return static_cast<int>(positions_.size()); }
  const std::vector<Point>& positions() const { return positions_; }
  double distance(int a, int b) const;
  double gain(int tx, int rx) const { return gains_[static_cast<std::size_t>(tx) * positions_.size() + rx]; }
  double noise_w() const { return noise_w_; }

  int resample_count = 0;  // coincident-position redraws during generation

 private:
  std::vector<Point> positions_;
  std::vector<double> gains_;  // row-major num_users x num_users
  double noise_w_;
};

// K positions i.i.d. uniform on the square; coincident users are
// resampled (counted in resample_count). Deterministic for a fixed seed.
CellTopology generate_topology(const SimConfig& cfg, std::uint64_t seed);

// Noise power in watts over the configured bandwidth.
double noise_power_w(const SimConfig& cfg);

double wavelength_m(const SimConfig& cfg);

}  // namespace d2d
