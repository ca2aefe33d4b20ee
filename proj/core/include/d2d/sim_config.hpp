#pragma once

#include <cstdint>
#include <string>

namespace d2d {

// One simulated cell: K users uniform on a square, each caching one of
// N_files files (Zipf gamma_c) and requesting one (Zipf gamma_r). D2D
// links are eligible within help distance r and scheduled against the
// per-link SINR floor max(v_check, c_s) under a per-transmitter power
// cap. Defaults are the simulation baseline used throughout.
struct SimConfig {
  int K = 100;                      // users in the cell
  double cell_side = 1000.0;        // m, square cell
  double r = 1000.0 / 7.0;          // m, help distance
  int N_files = 1000;               // catalog size
  double gamma_r = 0.6;             // request Zipf exponent
  double gamma_c = 1.5;             // caching Zipf exponent
  double v_check_db = 0.0;          // minimum acceptable SINR, dB
  double c_s_db = 0.0;              // scheduling coefficient, dB
  double p_max_dbm = 20.0;          // per-transmitter power cap, dBm
  double bandwidth_hz = 1e6;        // D2D channel bandwidth, Hz
  double noise_psd_dbm_hz = -170.0; // noise power spectral density, dBm/Hz
  double carrier_hz = 2.4e9;        // carrier frequency, Hz
  std::uint64_t rng_seed = 1;       // master seed; all randomness derives from it

  bool operator==(const SimConfig&) const = default;
};

// Throws std::invalid_argument naming the offending field.
// r = 0 is allowed (degenerate empty help region).
void validate(const SimConfig& cfg);

}  // namespace d2d
