#include "acshift/drive_shift.hpp"

#include <cmath>
#include <string>

#include "acshift/errors.hpp"

namespace acshift {

using cd = std::complex<double>;

namespace {

// Lorentzian weight Gamma / (delta^2 + Gamma^2), i.e. -Im 1/(delta + i Gamma).
double absorptive(double delta, double gamma) {
    return gamma / (delta * delta + gamma * gamma);
}

}  // namespace

Detunings detunings(Frequency wq, Frequency wd) {
    return {wq - wd, wq + wd};
}

Frequency effective_drive(const QubitParams& q, const FluxBias& b, Frequency drive_amplitude) {
    return drive_amplitude * projections(q, b).bar;
}

SidebandAmplitudes sideband_amplitudes(Frequency bar_drive, Frequency wq, Frequency wd,
                                       Rate gamma_phi, double sz) {
    const Detunings d = detunings(wq, wd);
    const double g = gamma_phi.angular();
    if (g == 0.0 && (d.minus.angular() == 0.0 || d.plus.angular() == 0.0))
        throw DegenerateDenominator("sideband denominator vanishes: zero detuning and zero decoherence");
    const double numerator = bar_drive.angular() * sz / 2.0;
    return {numerator / cd(d.plus.angular(), g), numerator / cd(d.minus.angular(), g)};
}

double offres_population(Frequency bar_drive, Frequency wq, Frequency wd,
                         const DissipationRates& rates) {
    const double gr = rates.relaxation.angular();
    if (!(gr > 0)) throw InvalidParameter("offres_population requires a positive relaxation rate");
    const Detunings d = detunings(wq, wd);
    const double gphi = rates.decoherence().angular();
    const double od = bar_drive.angular();
    const double saturation =
        od * od * (absorptive(d.minus.angular(), gphi) + absorptive(d.plus.angular(), gphi));
    return -gr / (gr + saturation);
}

Frequency ac_shift_exact(Frequency bar_drive, Frequency wq, Frequency wd, Rate gamma_phi) {
    const Detunings d = detunings(wq, wd);
    const double g = gamma_phi.angular();
    if (g == 0.0 && d.minus.angular() == 0.0)
        throw DegenerateDenominator("ac shift diverges on resonance without decoherence");
    const double od = bar_drive.angular();
    const cd sum = 1.0 / cd(d.minus.angular(), g) + 1.0 / cd(d.plus.angular(), -g);
    return Frequency::angular(od * od / 2.0 * sum.real());
}

Frequency ac_shift_approx(Frequency bar_drive, Frequency wq, Frequency wd) {
    const double od = bar_drive.angular();
    if (od == 0.0) return {};
    const double q = wq.angular();
    const double w = wd.angular();
    const double denom = q * q - w * w;
    if (denom == 0.0) throw DegenerateDenominator("ac shift diverges at omega_q == omega_d");
    return Frequency::angular(od * od * q / denom);
}

Frequency rabi_splitting(const QubitParams& q, const FluxBias& b, Frequency omega_ac) {
    const double wq = level_splitting(q, b).angular();
    const double eps = energy_bias(q, b).angular();
    const double ac = omega_ac.angular();
    return Frequency::angular(std::hypot(wq + ac, 2.0 * eps / q.gap.angular() * ac));
}

double mixing_parameter(Frequency bar_drive, const Detunings& d) {
    const double od = bar_drive.angular();
    if (od == 0.0) return 0.0;
    const double m = d.minus.angular();
    const double p = d.plus.angular();
    return od * od * (1.0 / (m * m) + 1.0 / (p * p));
}

CouplingFactors coupling_factors(const QubitParams& q, const FluxBias& b, const Tone& drive) {
    const double delta = q.gap.angular();
    const double eps = energy_bias(q, b).angular();
    const Frequency wq_f = level_splitting(q, b);
    const double wq = wq_f.angular();
    const Frequency bar = effective_drive(q, b, drive.amplitude);
    const double ac = ac_shift_approx(bar, wq_f, drive.frequency).angular();
    const double c = mixing_parameter(bar, detunings(wq_f, drive.frequency));
    const double omega_r = rabi_splitting(q, b, Frequency::angular(ac)).angular();

    CouplingFactors f;
    f.a_factor = 1.0 - c / 2.0;
    // omega_ac^2 / bar^2 = bar^2 wq^2 / (wq^2 - wd^2)^2, which tends to 0 with the drive.
    if (bar.angular() != 0.0) {
        const double wd = drive.frequency.angular();
        const double r = bar.angular() * wq / (wq * wq - wd * wd);
        f.b_factor = 1.0 - r * r;
    }
    f.alpha = eps / (wq * omega_r) * (f.a_factor * (wq + ac) + 2.0 * f.b_factor * ac);
    f.beta = delta / (wq * omega_r) *
             (f.b_factor * (wq + ac) + 2.0 * eps * eps / (delta * delta) * f.a_factor * ac);
    return f;
}

ModifiedRates modified_rates(const DissipationRates& rates, Frequency bar_drive, const Detunings& d) {
    const double c = mixing_parameter(bar_drive, d);
    const Rate gr = rates.relaxation;
    const Rate gp = rates.pure_dephasing;
    ModifiedRates m;
    m.relaxation_hat = gr - (c / 2.0) * (gr - gp);
    m.excitation_hat = (c / 2.0) * gp;
    m.dephasing_hat = gp + (c / 2.0) * (gr - 2.0 * gp);
    m.decoherence_hat = (m.relaxation_hat + m.excitation_hat) / 2.0 + m.dephasing_hat;
    if (m.relaxation_hat < Rate{} || m.excitation_hat < Rate{} || m.dephasing_hat < Rate{})
        throw NegativeRate("renormalized rates negative at C = " + std::to_string(c) +
                           "; drive is outside the perturbative regime");
    return m;
}

ModifiedRates unmodified_rates(const DissipationRates& rates) {
    return {rates.relaxation, Rate{}, rates.pure_dephasing, rates.decoherence()};
}

ShiftResult compute_shift(const QubitParams& q, const FluxBias& b, const Tone& drive) {
    ShiftResult r;
    r.splitting = level_splitting(q, b);
    r.bar_drive = effective_drive(q, b, drive.amplitude);
    r.detuning = detunings(r.splitting, drive.frequency);
    r.omega_ac = ac_shift_approx(r.bar_drive, r.splitting, drive.frequency);
    r.rabi_splitting = rabi_splitting(q, b, r.omega_ac);
    r.c_factor = mixing_parameter(r.bar_drive, r.detuning);
    const CouplingFactors f = coupling_factors(q, b, drive);
    r.alpha = f.alpha;
    r.beta = f.beta;
    r.a_factor = f.a_factor;
    r.b_factor = f.b_factor;
    r.expansion_ratio = r.bar_drive.angular() == 0.0
                            ? 0.0
                            : r.bar_drive / abs(r.detuning.minus);
    return r;
}

}  // namespace acshift
