#pragma once

#include <optional>

#include "acshift/qubit.hpp"

namespace acshift {

/// Circuit values for converting an input power to a drive amplitude.
struct DeviceGeometry {
    double coupling_capacitance_ff = 5.0;   ///< C_c
    double resonator_capacitance_pf = 0.4;  ///< C_r
    double line_impedance_ohm = 50.0;       ///< Z
    std::optional<Rate> drive_mode_decay;   ///< kappa_d; default 3 omega_r / Q
    std::optional<Frequency> drive_coupling;  ///< g_d; default 3^1.5 g
    double calibration_factor = 1.0;        ///< multiplies the formula's amplitude

    void validate() const;
    Rate kappa_d(const ResonatorParams& r) const;
    Frequency g_d(const ResonatorParams& r) const;
};

/// Omega_d = 4 g_d sqrt(N_d),
/// sqrt(N_d) = (1/kappa_d) (C_c/2) sqrt(P_in / Z) sqrt(h omega_d / C_r),
/// evaluated in SI units (kappa_d and omega_d in rad/s, P_in in W) as written,
/// then scaled by the calibration factor.
Frequency drive_from_power(double power_dbm, Frequency wd, const DeviceGeometry& geometry,
                           const ResonatorParams& resonator);

/// Inverse of drive_from_power.
double power_from_drive(Frequency amplitude, Frequency wd, const DeviceGeometry& geometry,
                        const ResonatorParams& resonator);

/// Calibration factor that makes drive_from_power(reference_dbm) equal reference_amplitude.
double solve_calibration_factor(double reference_dbm, Frequency reference_amplitude, Frequency wd,
                                DeviceGeometry geometry, const ResonatorParams& resonator);

}  // namespace acshift
