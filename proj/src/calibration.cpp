#include "acshift/calibration.hpp"

#include <cmath>

#include "acshift/errors.hpp"

namespace acshift {

namespace {

constexpr double kPerNs = 1e9;  // rad/ns -> rad/s

// sqrt(N_d) per sqrt(W) of input power, before calibration.
double photon_root_per_sqrt_watt(Frequency wd, const DeviceGeometry& g, const ResonatorParams& r) {
    const double kappa_d = g.kappa_d(r).angular() * kPerNs;
    const double cc = g.coupling_capacitance_ff * 1e-15;
    const double cr = g.resonator_capacitance_pf * 1e-12;
    const double omega_d = wd.angular() * kPerNs;
    return (1.0 / kappa_d) * (cc / 2.0) * std::sqrt(1.0 / g.line_impedance_ohm) *
           std::sqrt(planck_constant * omega_d / cr);
}

double watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace

void DeviceGeometry::validate() const {
    if (!(coupling_capacitance_ff > 0) || !(resonator_capacitance_pf > 0) || !(line_impedance_ohm > 0))
        throw InvalidParameter("geometry capacitances and impedance must be positive");
    if (drive_mode_decay && !(*drive_mode_decay > Rate{}))
        throw InvalidParameter("drive mode decay must be positive");
    if (drive_coupling && !(*drive_coupling > Frequency{}))
        throw InvalidParameter("drive coupling must be positive");
    if (!(calibration_factor > 0)) throw InvalidParameter("calibration factor must be positive");
}

Rate DeviceGeometry::kappa_d(const ResonatorParams& r) const {
    return drive_mode_decay ? *drive_mode_decay : r.kappa() * static_cast<double>(r.drive_harmonic);
}

Frequency DeviceGeometry::g_d(const ResonatorParams& r) const {
    return drive_coupling ? *drive_coupling : r.coupling * std::pow(3.0, 1.5);
}

Frequency drive_from_power(double power_dbm, Frequency wd, const DeviceGeometry& geometry,
                           const ResonatorParams& resonator) {
    geometry.validate();
    resonator.validate();
    const double root_n = photon_root_per_sqrt_watt(wd, geometry, resonator) * std::sqrt(watts(power_dbm));
    return 4.0 * geometry.g_d(resonator) * root_n * geometry.calibration_factor;
}

double power_from_drive(Frequency amplitude, Frequency wd, const DeviceGeometry& geometry,
                        const ResonatorParams& resonator) {
    const Frequency unit = drive_from_power(30.0, wd, geometry, resonator);  // 1 W
    const double ratio = amplitude / unit;
    if (!(ratio > 0)) throw InvalidParameter("drive amplitude must be positive to convert to power");
    return 30.0 + 20.0 * std::log10(ratio);
}

double solve_calibration_factor(double reference_dbm, Frequency reference_amplitude, Frequency wd,
                                DeviceGeometry geometry, const ResonatorParams& resonator) {
    geometry.calibration_factor = 1.0;
    const Frequency raw = drive_from_power(reference_dbm, wd, geometry, resonator);
    if (!(reference_amplitude > Frequency{})) throw InvalidParameter("reference amplitude must be positive");
    return reference_amplitude / raw;
}

}  // namespace acshift
