#include "acshift/steady_state.hpp"

#include <cmath>

#include "acshift/errors.hpp"

namespace acshift {

using cd = std::complex<double>;

namespace {

constexpr double kDamping = 0.5;
constexpr double kPhotonTolerance = 1e-9;
constexpr int kMaxIterations = 10000;

// delta_rp - i kappa/2 + g^2 beta^2 sz / (Omega_R - omega_p - i Gamma_phi)
cd cavity_denominator(const OperatingPoint& op, const ShiftResult& shift,
                      const ModifiedRates& rates_hat, double sz) {
    const double g = op.resonator.coupling.angular();
    const double kappa = op.resonator.kappa().angular();
    const cd qubit_pole(shift.rabi_splitting.angular() - op.tones.probe.frequency.angular(),
                        -rates_hat.decoherence_hat.angular());
    const double pull = g * g * shift.beta * shift.beta * sz;
    return cd(op.probe_detuning().angular(), -kappa / 2.0) + pull / qubit_pole;
}

double lorentzian(double detuning, double width) {
    return width / (detuning * detuning + width * width);
}

}  // namespace

void OperatingPoint::validate() const {
    qubit.validate();
    resonator.validate();
    rates.validate();
    tones.probe.validate();
    if (tones.drive.amplitude > Frequency{}) tones.drive.validate();
    if (tones.spectroscopy.amplitude > Frequency{}) tones.spectroscopy.validate();
    if (tones.drive.amplitude < Frequency{} || tones.spectroscopy.amplitude < Frequency{})
        throw InvalidParameter("tone amplitudes must be non-negative");
    if (!(photon_number >= 0)) throw InvalidParameter("photon number must be non-negative");
}

Frequency OperatingPoint::probe_amplitude() const {
    if (probe_source == ProbeSource::explicit_amplitude) return tones.probe.amplitude;
    return resonator.kappa() * (std::sqrt(photon_number) / 2.0);
}

EffectiveQubit effective_qubit(const OperatingPoint& op) {
    EffectiveQubit eq;
    eq.shift = compute_shift(op.qubit, op.bias, op.tones.drive);
    if (op.correction_order == CorrectionOrder::first) {
        const Projections p = projections(op.qubit, op.bias);
        eq.shift.alpha = p.check;
        eq.shift.beta = p.bar;
        eq.shift.a_factor = 1.0;
        eq.shift.b_factor = 1.0;
        eq.rates = unmodified_rates(op.rates);
    } else {
        eq.rates = modified_rates(op.rates, eq.shift.bar_drive, eq.shift.detuning);
    }
    return eq;
}

SpectroscopySidebands spectroscopy_sidebands(const OperatingPoint& op, const ShiftResult& shift,
                                             const ModifiedRates& rates_hat, double sz, cd a) {
    const double omega_r = shift.rabi_splitting.angular();
    const double gphi = rates_hat.decoherence_hat.angular();
    const double g = op.resonator.coupling.angular();
    const double os = op.tones.spectroscopy.amplitude.angular();
    SpectroscopySidebands s;
    s.probe = shift.beta * g * sz * a / cd(omega_r - op.tones.probe.frequency.angular(), -gphi);
    if (os != 0.0)
        s.spectroscopy = shift.beta * os * sz /
                         (2.0 * cd(omega_r - op.tones.spectroscopy.frequency.angular(), -gphi));
    return s;
}

cd cavity_amplitude(const OperatingPoint& op, const ShiftResult& shift,
                    const ModifiedRates& rates_hat, double sz) {
    return -op.probe_amplitude().angular() / cavity_denominator(op, shift, rates_hat, sz);
}

double qubit_population(const OperatingPoint& op, const ShiftResult& shift,
                        const ModifiedRates& rates_hat, double photon_number) {
    const double gr = rates_hat.relaxation_hat.angular();
    const double ge = rates_hat.excitation_hat.angular();
    const double gphi = rates_hat.decoherence_hat.angular();
    const double omega_r = shift.rabi_splitting.angular();
    const double g = op.resonator.coupling.angular();
    const double os = op.tones.spectroscopy.amplitude.angular();

    double pump = 0.0;
    if (g != 0.0 && photon_number != 0.0)
        pump += 4.0 * g * g * photon_number *
                lorentzian(omega_r - op.tones.probe.frequency.angular(), gphi);
    if (os != 0.0)
        pump += os * os * lorentzian(omega_r - op.tones.spectroscopy.frequency.angular(), gphi);
    pump *= shift.beta * shift.beta;

    const double denom = ge + gr + pump;
    if (denom == 0.0) throw DegenerateDenominator("qubit population undefined: all rates vanish");
    return (ge - gr) / denom;
}

cd transmission(const OperatingPoint& op, const ShiftResult& shift,
                const ModifiedRates& rates_hat, double sz) {
    const double kappa = op.resonator.kappa().angular();
    return cd(0.0, 0.5) * kappa / cavity_denominator(op, shift, rates_hat, sz);
}

SteadyState solve(const OperatingPoint& op) {
    op.validate();
    const EffectiveQubit eq = effective_qubit(op);

    SteadyState st;
    double n = op.photon_number;
    if (op.photon_mode == PhotonMode::self_consistent) {
        bool converged = false;
        for (int it = 1; it <= kMaxIterations; ++it) {
            const double sz = qubit_population(op, eq.shift, eq.rates, n);
            const double n_new = std::norm(cavity_amplitude(op, eq.shift, eq.rates, sz));
            const double next = (1.0 - kDamping) * n + kDamping * n_new;
            st.iterations = it;
            const bool done = std::abs(next - n) < kPhotonTolerance;
            n = next;
            if (done) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw ConvergenceError("self-consistent photon number did not converge in " +
                                   std::to_string(kMaxIterations) + " iterations");
    }
    st.photon_number = n;
    st.population = qubit_population(op, eq.shift, eq.rates, n);
    st.cavity_amplitude = cavity_amplitude(op, eq.shift, eq.rates, st.population);
    st.transmission = transmission(op, eq.shift, eq.rates, st.population);
    st.sidebands = spectroscopy_sidebands(op, eq.shift, eq.rates, st.population, st.cavity_amplitude);
    return st;
}

}  // namespace acshift
