#ifndef SHUTTLE_CONSTANTS_HPP
#define SHUTTLE_CONSTANTS_HPP

namespace shuttle::phys {

// CODATA 2018 values, SI units.
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K
inline constexpr double kMassRb87 = 1.44316060e-25;    // kg

}  // namespace shuttle::phys

#endif
