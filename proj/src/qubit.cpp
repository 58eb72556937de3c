#include "acshift/qubit.hpp"

#include <cmath>

#include "acshift/errors.hpp"

namespace acshift {

namespace {

// epsilon/h in GHz per unit of (Phi_0/2 - Phi_e)/Phi_0:
//   epsilon/h = 2 I_p Phi_0 x / h = (I_p / e) x
double ghz_per_flux_unit(const QubitParams& q) {
    return q.persistent_current_na * 1e-9 / elementary_charge * 1e-9;
}

}  // namespace

void QubitParams::validate() const {
    if (!(gap > Frequency{})) throw InvalidParameter("qubit gap must be positive");
    if (!(persistent_current_na > 0)) throw InvalidParameter("persistent current must be positive");
}

void ResonatorParams::validate() const {
    if (!(fundamental > Frequency{})) throw InvalidParameter("resonator frequency must be positive");
    if (!(quality_factor > 0)) throw InvalidParameter("quality factor must be positive");
    if (coupling < Frequency{}) throw InvalidParameter("coupling must be non-negative");
    if (drive_harmonic < 1) throw InvalidParameter("drive harmonic must be >= 1");
}

void Tone::validate() const {
    if (amplitude < Frequency{}) throw InvalidParameter("tone amplitude must be non-negative");
    if (!(frequency > Frequency{})) throw InvalidParameter("tone frequency must be positive");
}

void DissipationRates::validate() const {
    if (relaxation < Rate{} || pure_dephasing < Rate{})
        throw InvalidParameter("dissipation rates must be non-negative");
}

Frequency bias_from_flux(const QubitParams& q, ExternalFlux flux) {
    return Frequency::ghz(ghz_per_flux_unit(q) * (0.5 - flux.phi0_units));
}

ExternalFlux flux_from_bias(const QubitParams& q, Frequency energy_bias) {
    return ExternalFlux{0.5 - energy_bias.ghz() / ghz_per_flux_unit(q)};
}

Frequency energy_bias(const QubitParams& q, const FluxBias& b) {
    if (const auto* e = std::get_if<EnergyBias>(&b)) return e->value;
    return bias_from_flux(q, std::get<ExternalFlux>(b));
}

Frequency level_splitting(const QubitParams& q, const FluxBias& b) {
    const double eps = energy_bias(q, b).angular();
    return Frequency::angular(std::hypot(q.gap.angular(), eps));
}

Projections projections(const QubitParams& q, const FluxBias& b) {
    const double eps = energy_bias(q, b).angular();
    const double wq = std::hypot(q.gap.angular(), eps);
    return {q.gap.angular() / wq, eps / wq};
}

}  // namespace acshift
