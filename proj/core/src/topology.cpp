#include "d2d/topology.hpp"

#include <cmath>
#include <stdexcept>

#include "d2d/rng.hpp"
#include "d2d/units.hpp"

namespace d2d {

namespace {
constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kPi = 3.14159265358979323846;
}  // namespace

double pathloss_gain(double distance_m, double lambda_m) {
  double amp = lambda_m / (4.0 * kPi * distance_m);
  return amp * amp;
}

double wavelength_m(const SimConfig& cfg) { return kSpeedOfLight / cfg.carrier_hz; }

double noise_power_w(const SimConfig& cfg) {
  return dbm_to_watts(cfg.noise_psd_dbm_hz) * cfg.bandwidth_hz;
}

CellTopology::CellTopology(std::vector<Point> positions, double lambda_m, double noise_w)
    : positions_(std::move(positions)), noise_w_(noise_w) {
  if (!(noise_w_ > 0)) throw std::invalid_argument("noise_w must be > 0");
  std::size_t k = positions_.size();
  gains_.assign(k * k, 0.0);
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t n = m + 1; n < k; ++n) {
      double g = pathloss_gain(distance(static_cast<int>(m), static_cast<int>(n)), lambda_m);
      gains_[m * k + n] = g;
      gains_[n * k + m] = g;  // distance-only model, exactly symmetric
    }
  }
}

double CellTopology::distance(int a, int b) const {
  double dx = positions_[a].x - positions_[b].x;
  double dy = positions_[a].y - positions_[b].y;
  return std::sqrt(dx * dx + dy * dy);
}

CellTopology generate_topology(const SimConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pos;
  pos.reserve(cfg.K);
  int resamples = 0;
  for (int u = 0; u < cfg.K; ++u) {
    Point p;
    bool coincident = true;
    while (coincident) {
      p.x = rng.uniform(0.0, cfg.cell_side);
      p.y = rng.uniform(0.0, cfg.cell_side);
      coincident = false;
      for (const Point& q : pos) {
        if (q.x == p.x && q.y == p.y) {
          coincident = true;
          ++resamples;
          break;
        }
      }
    }
    pos.push_back(p);
  }
  CellTopology topo(std::move(pos), wavelength_m(cfg), noise_power_w(cfg));
  topo.resample_count = resamples;
  return topo;
}

}  // namespace d2d
