#pragma once

#include <variant>

#include "acshift/units.hpp"

namespace acshift {

struct QubitParams {
    Frequency gap;                      ///< Delta/h
    double persistent_current_na = 0;   ///< I_p in nA

    void validate() const;
};

/// Energy bias epsilon/h (signed).
struct EnergyBias {
    Frequency value;
};

/// External flux through the loop, in units of the flux quantum.
struct ExternalFlux {
    double phi0_units = 0.5;
};

using FluxBias = std::variant<EnergyBias, ExternalFlux>;

struct ResonatorParams {
    Frequency fundamental;            ///< omega_r/2pi
    double quality_factor = 1.0;
    Frequency coupling;               ///< g/2pi, fundamental mode
    int drive_harmonic = 3;

    /// Photon decay rate kappa = omega_r / Q.
    Frequency kappa() const { return fundamental / quality_factor; }
    Frequency harmonic_frequency() const { return fundamental * drive_harmonic; }
    void validate() const;
};

enum class ToneRole { probe, drive, spectroscopy };

struct Tone {
    Frequency amplitude;
    Frequency frequency;
    ToneRole role = ToneRole::probe;

    void validate() const;
};

struct ToneSet {
    Tone probe{{}, {}, ToneRole::probe};
    Tone drive{{}, {}, ToneRole::drive};
    Tone spectroscopy{{}, {}, ToneRole::spectroscopy};
};

struct DissipationRates {
    Rate relaxation;       ///< Gamma_r
    Rate pure_dephasing;   ///< gamma_phi

    /// Gamma_phi = Gamma_r/2 + gamma_phi.
    Rate decoherence() const { return relaxation / 2.0 + pure_dephasing; }
    void validate() const;
};

/// Dimensionless projections of the qubit eigenbasis couplings.
struct Projections {
    double bar = 1.0;    ///< Delta / (h omega_q)
    double check = 0.0;  ///< epsilon / (h omega_q)
};

Frequency bias_from_flux(const QubitParams& q, ExternalFlux flux);
ExternalFlux flux_from_bias(const QubitParams& q, Frequency energy_bias);

/// Resolves either bias representation to epsilon/h.
Frequency energy_bias(const QubitParams& q, const FluxBias& b);

/// omega_q = sqrt(Delta^2 + epsilon^2).
Frequency level_splitting(const QubitParams& q, const FluxBias& b);

Projections projections(const QubitParams& q, const FluxBias& b);

}  // namespace acshift
