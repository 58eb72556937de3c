#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acshift/calibration.hpp"
#include "acshift/steady_state.hpp"

namespace acshift {

enum class SweepParameter {
    energy_bias,             ///< GHz
    spectroscopy_frequency,  ///< GHz
    probe_frequency,         ///< GHz
    drive_amplitude,         ///< GHz
    drive_power,             ///< dBm, converted through drive_from_power
};

std::string parameter_name(SweepParameter p);  ///< column name, e.g. "energy_bias_ghz"

struct Axis {
    SweepParameter parameter = SweepParameter::energy_bias;
    std::vector<double> values;

    static Axis linspace(SweepParameter p, double start, double stop, int points);
    std::size_t size() const { return values.size(); }
    double step() const;  ///< spacing of the first two values (0 for a single value)
};

enum class Quantity { t_abs, t_phase, population, levels };

/// Which correction order each grid point uses.
enum class OrderPolicy {
    uniform,             ///< the template's correction_order everywhere
    split_at_zero_bias,  ///< first order for eps < 0, second order for eps >= 0
};

enum class Normalization { none, column };

struct SweepSpec {
    Axis axis1;
    std::optional<Axis> axis2;
    OperatingPoint fixed;
    Quantity quantity = Quantity::t_abs;
    OrderPolicy order_policy = OrderPolicy::uniform;
    /// Needed only when an axis is drive_power.
    std::optional<DeviceGeometry> geometry;

    void validate() const;
};

/// Sampled analytic curve drawn over a map.
struct Overlay {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Grid values indexed (i1, i2) -> i1 * n2 + i2; one vector per value column.
struct MapResult {
    Axis axis1;
    std::optional<Axis> axis2;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;
    Normalization normalization = Normalization::none;
    std::vector<Overlay> overlays;
    /// Scalars describing how the map was made (e.g. drive amplitude of a trace).
    std::map<std::string, double> attributes;

    std::size_t n1() const { return axis1.size(); }
    std::size_t n2() const { return axis2 ? axis2->size() : 1; }
    double at(std::size_t i1, std::size_t i2, std::size_t column = 0) const {
        return values[column][i1 * n2() + i2];
    }
};

/// Applies one swept value to an operating point.
void apply_parameter(OperatingPoint& op, SweepParameter p, double value,
                     const std::optional<DeviceGeometry>& geometry);

/// Evaluates the spec on `threads` workers (0: hardware concurrency). Results
/// are placed by grid index, so they do not depend on the thread count.
/// Solver errors are rethrown as the same type with the grid coordinates appended.
MapResult evaluate(const SweepSpec& spec, unsigned threads = 0);

/// Divides each axis1 column (all axis2 values at fixed axis1) by its median.
void normalize_columns(MapResult& map, std::size_t column = 0);

/// Omega_R(eps) samples over the bias axis for the template's drive.
Overlay splitting_overlay(const OperatingPoint& op, const Axis& bias_axis);

/// |t| over (eps, omega_s) with the Omega_R overlay and optional column normalization.
MapResult spectroscopy_map(const SweepSpec& spec, Normalization norm, unsigned threads = 0);

/// One 1-D |t|(eps) trace per drive amplitude; the spectroscopy tone is switched off.
std::vector<MapResult> bias_trace_amplitudes(const SweepSpec& spec, const std::vector<Frequency>& amplitudes,
                                             unsigned threads = 0);
std::vector<MapResult> bias_trace(const SweepSpec& spec, const std::vector<double>& powers_dbm,
                                  const DeviceGeometry& geometry, unsigned threads = 0);

/// +Omega_R/2, -Omega_R/2 and <sigma_z> over eps, for each drive amplitude.
MapResult level_diagram(const SweepSpec& spec, const std::vector<Frequency>& drive_amplitudes,
                        unsigned threads = 0);

/// Minimum over eps of the omega_s ridge (the extremum of each column relative
/// to its median), with parabolic refinement. Throws RidgeNotFound when no
/// column rises 3x above the map's noise floor.
Frequency extract_min_gap(const MapResult& map, std::size_t column = 0);

struct Dip {
    double position = 0.0;  ///< refined axis value
    double depth = 0.0;     ///< prominence below the lower neighbouring maximum
    std::size_t index = 0;
};

/// Local minima whose prominence exceeds `min_prominence`.
std::vector<Dip> find_dips(const std::vector<double>& x, const std::vector<double>& y,
                           double min_prominence = 1e-3);

/// Drive amplitude where Omega_R(eps) first reaches omega_r at eps = 0.
/// Throws InvalidParameter if the bare splitting is already below omega_r or
/// no root exists below `max_amplitude`.
Frequency dip_splitting_threshold(const OperatingPoint& op, Frequency max_amplitude = Frequency::ghz(10));

/// Energy biases (GHz) where Omega_R(eps) = omega_r inside [lo, hi].
std::vector<double> resonance_biases(const OperatingPoint& op, double lo_ghz, double hi_ghz);

}  // namespace acshift
