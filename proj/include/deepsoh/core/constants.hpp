#pragma once

namespace deepsoh::constants {

inline constexpr double faraday = 96485.33212;      // C/mol
inline constexpr double gas_constant = 8.314462618; // J/(mol K)
inline constexpr double seconds_per_hour = 3600.0;

}  // namespace deepsoh::constants
