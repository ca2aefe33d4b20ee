#pragma once

#include <cmath>

namespace d2d {

// All internal arithmetic runs in linear units (watts, ratios); dB/dBm
// appear only at the config and reporting boundary.

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbm_to_watts(double x_dbm) { return std::pow(10.0, (x_dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline double log2p1(double x) { return std::log2(1.0 + x); }

}  // namespace d2d
