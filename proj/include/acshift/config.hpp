#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acshift/calibration.hpp"
#include "acshift/steady_state.hpp"
#include "acshift/sweep.hpp"

namespace acshift {

struct AxisRange {
    double start = 0.0;
    double stop = 0.0;
    int points = 2;

    Axis to_axis(SweepParameter p) const { return Axis::linspace(p, start, stop, points); }
};

enum class OrderSetting { first, second, split_at_zero_bias };

struct OracleSettings {
    std::string check = "population";  ///< population | shift | rates | transmission | all
    int fock_dim = 6;
    std::vector<double> bias_points_ghz{-3.0, -1.5, 0.0, 1.5, 3.0};
    /// When set, each population point uses the drive amplitude that puts
    /// bar_Omega_d / |delta_-| at this value instead of the configured amplitude.
    std::optional<double> expansion_ratio;
    std::vector<double> shift_amplitudes_ghz{1.0, 2.0, 3.0};
    int probe_span_kappa = 4;
    bool rotating_wave_coupling = false;
};

struct CalibrationReference {
    double power_dbm = 0.0;
    double amplitude_ghz = 0.0;
};

/// Everything a CLI run needs; all members carry defaults (the reference
/// device), so an empty config file is valid.
struct RunConfig {
    double gap_ghz = 2.97;
    double persistent_current_na = 160.0;
    std::optional<double> energy_bias_ghz = 0.0;
    std::optional<double> external_flux_phi0;

    double fundamental_ghz = 2.59;
    double quality_factor = 1.2e5;
    double coupling_mhz = 3.0;
    int drive_harmonic = 3;

    double relaxation_mhz = 10.0;
    double pure_dephasing_mhz = 20.0;

    std::optional<double> probe_ghz;  ///< default: the fundamental
    std::optional<double> probe_amplitude_mhz;  ///< default: from photon_number
    std::optional<double> drive_ghz;  ///< default: drive_harmonic * fundamental
    double drive_amplitude_ghz = 0.0;
    double spectroscopy_ghz = 3.5;
    /// Unset: the command's default (10 MHz for levels, 1 MHz for
    /// spectroscopy maps, off elsewhere).
    std::optional<double> spectroscopy_amplitude_mhz;

    double photon_number = 5.0;
    OrderSetting correction_order = OrderSetting::second;
    PhotonMode photon_mode = PhotonMode::fixed_n;
    Normalization normalization = Normalization::column;

    double coupling_capacitance_ff = 5.0;
    double resonator_capacitance_pf = 0.4;
    double line_impedance_ohm = 50.0;
    std::optional<double> drive_mode_decay_mhz;  ///< default 3 omega_r / Q
    std::optional<double> drive_coupling_mhz;    ///< default 3^1.5 g
    double calibration_factor = 1.0;
    std::optional<CalibrationReference> calibration_reference;

    AxisRange bias_axis{-6.0, 6.0, 201};
    AxisRange spectroscopy_axis{2.0, 6.0, 201};
    /// Bias axis for levels and biastrace; narrower than the map so that a
    /// few-GHz drive stays perturbative (omega_q approaches omega_d near 7 GHz bias).
    AxisRange trace_bias_axis{-3.0, 3.0, 601};
    std::vector<double> drive_amplitudes_ghz{0.0, 1.0, 2.0, 3.0};
    std::vector<double> drive_powers_dbm;

    OracleSettings oracle;

    void validate() const;
    OperatingPoint operating_point() const;
    OrderPolicy order_policy() const;
    DeviceGeometry geometry() const;
};

/// Strict parse: unknown keys, wrong types and conflicting fields throw
/// ConfigError naming the offending field (and line, for JSON syntax errors).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Fully resolved form; parse_config(dump) reproduces the same RunConfig.
nlohmann::ordered_json to_json(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace acshift
