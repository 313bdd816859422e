#ifndef OPTLEV_CONSTANTS_HPP
#define OPTLEV_CONSTANTS_HPP

// Fixed physical constants (SI, CODATA 2018). These are not configurable.

namespace optlev {

struct PhysicalConstants {
  double c = 299792458.0;          // speed of light [m/s]
  double hbar = 1.054571817e-34;   // reduced Planck constant [J s]
  double k_B = 1.380649e-23;       // Boltzmann constant [J/K]
  double g_acc = 9.80665;          // standard gravitational acceleration [m/s^2]
  double sigma_SB = 5.670374419e-8; // Stefan-Boltzmann constant [W m^-2 K^-4]
};

inline constexpr PhysicalConstants kConst{};

}  // namespace optlev

#endif  // OPTLEV_CONSTANTS_HPP
