#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "acshift/config.hpp"

namespace testing {

using namespace acshift;

/// The device of the default config: Delta = 2.97 GHz, omega_r = 2.59 GHz,
/// g = 3 MHz, Gamma_r = 10 MHz, gamma_phi = 20 MHz, drive at 7.77 GHz, N = 5.
inline OperatingPoint device_point(double eps_ghz = 0.0, double drive_ghz = 0.0) {
    RunConfig cfg;
    cfg.energy_bias_ghz = eps_ghz;
    cfg.drive_amplitude_ghz = drive_ghz;
    return cfg.operating_point();
}

/// Seeded source of random parameters for property tests.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    QubitParams qubit() { return {Frequency::ghz(uniform(1.0, 6.0)), uniform(50.0, 500.0)}; }
    double bias() { return uniform(-8.0, 8.0); }

    /// A drive frequency at least `margin` GHz away from the splitting.
    Frequency drive_away_from(Frequency wq, double margin) {
        for (;;) {
            const double wd = uniform(0.5, 15.0);
            if (std::abs(wd - wq.ghz()) > margin) return Frequency::ghz(wd);
        }
    }

    DissipationRates rates() { return {Rate::mhz(uniform(0.1, 50.0)), Rate::mhz(uniform(0.0, 50.0))}; }

private:
    std::mt19937 rng_;
};

inline constexpr int kCases = 200;

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("acshift_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
