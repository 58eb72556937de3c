#include "acshift/oracle/transmission.hpp"

#include <cmath>
#include <string>

#include "acshift/errors.hpp"

namespace acshift::oracle {

cd oracle_transmission(const TruncatedSystem& sys, cd cavity_amplitude) {
    const double op = sys.probe.amplitude.angular();
    if (op == 0.0) throw InvalidParameter("transmission needs a non-zero probe amplitude");
    return cd(0.0, -1.0) * sys.kappa.angular() * cavity_amplitude / (2.0 * op);
}

TransmissionPoint transmission_point(TruncatedSystem sys, const TransmissionOracleConfig& cfg) {
    if (!sys.with_cavity) throw InvalidParameter("transmission oracle needs a cavity");
    if (!(sys.kappa > Rate{})) throw InvalidParameter("transmission oracle needs kappa > 0");
    const Operators o = operators(sys);

    TransmissionPoint pt;
    pt.probe = sys.probe.frequency;
    for (int pass = 0;; ++pass) {
        const PeriodicSteadyState ss = periodic_steady_state(build_generator(sys), cfg.balance);
        const cd b = ss.fourier(o.a, sys.probe_component_frequency());
        pt.cavity_amplitude = lab_cavity_amplitude(sys, b);
        pt.population = ss.fourier(o.sigma_z, 0.0).real();
        pt.top_fock = top_fock_occupation(sys, ss.average());
        if (!sys.displaced || std::abs(b) < cfg.field_tolerance || pass >= cfg.max_reframes) break;
        sys.frame_field = pt.cavity_amplitude;
    }
    if (pt.top_fock > cfg.max_top_fock)
        throw TruncationError("top Fock level occupation " + std::to_string(pt.top_fock) +
                              " exceeds " + std::to_string(cfg.max_top_fock) + " at probe " +
                              std::to_string(pt.probe.ghz()) + " GHz; increase fock_dim");
    pt.transmission = oracle_transmission(sys, pt.cavity_amplitude);
    return pt;
}

std::vector<TransmissionPoint> transmission_oracle(const TruncatedSystem& sys,
                                                   const std::vector<Frequency>& probe_scan,
                                                   const TransmissionOracleConfig& cfg) {
    std::vector<TransmissionPoint> out;
    out.reserve(probe_scan.size());
    for (Frequency wp : probe_scan) {
        TruncatedSystem s = sys;
        s.probe.frequency = wp;
        s.frame_field.reset();
        out.push_back(transmission_point(std::move(s), cfg));
    }
    return out;
}

}  // namespace acshift::oracle
