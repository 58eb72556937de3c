#pragma once

#include <compare>
#include <numbers>

namespace acshift {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// SI constants (exact since the 2019 redefinition).
inline constexpr double planck_constant = 6.62607015e-34;      // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double flux_quantum = planck_constant / (2.0 * elementary_charge);  // Wb

/// A frequency or rate.
///
/// Stored as an angular frequency in rad/ns. All configuration and output uses
/// ordinary frequencies (the value of omega/2pi) in GHz or MHz; the factory and
/// accessor names carry the unit so the 2pi never has to be written by hand.
class Frequency {
public:
    constexpr Frequency() = default;

    static constexpr Frequency angular(double rad_per_ns) { return Frequency(rad_per_ns); }
    static constexpr Frequency ghz(double f) { return Frequency(two_pi * f); }
    static constexpr Frequency mhz(double f) { return Frequency(two_pi * f * 1e-3); }

    constexpr double angular() const { return w_; }
    constexpr double ghz() const { return w_ / two_pi; }
    constexpr double mhz() const { return w_ / two_pi * 1e3; }

    constexpr Frequency operator-() const { return Frequency(-w_); }
    constexpr Frequency& operator+=(Frequency o) { w_ += o.w_; return *this; }
    constexpr Frequency& operator-=(Frequency o) { w_ -= o.w_; return *this; }

    friend constexpr Frequency operator+(Frequency a, Frequency b) { return Frequency(a.w_ + b.w_); }
    friend constexpr Frequency operator-(Frequency a, Frequency b) { return Frequency(a.w_ - b.w_); }
    friend constexpr Frequency operator*(Frequency a, double s) { return Frequency(a.w_ * s); }
    friend constexpr Frequency operator*(double s, Frequency a) { return Frequency(a.w_ * s); }
    friend constexpr Frequency operator/(Frequency a, double s) { return Frequency(a.w_ / s); }
    friend constexpr double operator/(Frequency a, Frequency b) { return a.w_ / b.w_; }
    friend constexpr auto operator<=>(Frequency, Frequency) = default;

private:
    explicit constexpr Frequency(double w) : w_(w) {}
    double w_ = 0.0;
};

/// Rates share the representation of frequencies (rad/ns).
using Rate = Frequency;

constexpr Frequency abs(Frequency f) { return f < Frequency{} ? -f : f; }

namespace literals {
constexpr Frequency operator""_GHz(long double f) { return Frequency::ghz(static_cast<double>(f)); }
constexpr Frequency operator""_GHz(unsigned long long f) { return Frequency::ghz(static_cast<double>(f)); }
constexpr Frequency operator""_MHz(long double f) { return Frequency::mhz(static_cast<double>(f)); }
constexpr Frequency operator""_MHz(unsigned long long f) { return Frequency::mhz(static_cast<double>(f)); }
}  // namespace literals

}  // namespace acshift
