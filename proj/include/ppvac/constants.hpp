#ifndef PPVAC_CONSTANTS_HPP
#define PPVAC_CONSTANTS_HPP

#include <numbers>

// CODATA 2018 exact / recommended values, SI units.
namespace ppvac::si {

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double planck = 6.62607015e-34;      // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double avogadro = 6.02214076e23;     // 1/mol
inline constexpr double debye = 3.33564095198152e-30; // C m

inline constexpr double femtosecond = 1e-15;  // s
inline constexpr double liter = 1e-3;         // m^3

}  // namespace ppvac::si

namespace ppvac {

inline constexpr double pi = std::numbers::pi;

/// Angular frequency (rad/fs) of light with vacuum wavelength `lambda_m` (m).
constexpr double omega_from_wavelength(double lambda_m)
{
    return 2.0 * pi * si::c / lambda_m * si::femtosecond;
}

/// Vacuum wavelength (m) of light with angular frequency `omega` (rad/fs).
constexpr double wavelength_from_omega(double omega)
{
    return 2.0 * pi * si::c / (omega / si::femtosecond);
}

}  // namespace ppvac

#endif
