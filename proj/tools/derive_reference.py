#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Closed-form quantities are evaluated with mpmath at 30 digits. Dynamical
quantities use the one-period propagator (monodromy) of the Lindblad or
Schroedinger equation, integrated with scipy's DOP853, which shares no code or
method with the library (harmonic balance, Sambe-space Floquet, dopri5 window
averaging).

Frequencies are ordinary frequencies in GHz unless marked; time is in ns.
Run: python3 tools/derive_reference.py
"""

import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

mp.mp.dps = 30
TWO_PI = 2 * np.pi

GAP = mp.mpf("2.97")
IP_NA = mp.mpf(160)
WR = mp.mpf("2.59")
WD = 3 * WR
G_MHZ = mp.mpf(3)
GR_MHZ = mp.mpf(10)
GPHI_MHZ = mp.mpf(20)
H = mp.mpf("6.62607015e-34")
E = mp.mpf("1.602176634e-19")
PHI0 = H / (2 * E)


def splitting(eps):
    return mp.sqrt(GAP**2 + eps**2)


def omega_ac(bar, wq, wd):
    return bar**2 * wq / (wq**2 - wd**2)


def rabi(eps, amp, wd=WD):
    wq = splitting(eps)
    ac = omega_ac(amp * GAP / wq, wq, wd)
    return mp.sqrt((wq + ac) ** 2 + (2 * eps / GAP * ac) ** 2)


def mixing(bar, wq, wd):
    return bar**2 * (1 / (wq - wd) ** 2 + 1 / (wq + wd) ** 2)


def rates(c):
    gr = GR_MHZ - c / 2 * (GR_MHZ - GPHI_MHZ)
    ge = c / 2 * GPHI_MHZ
    gp = GPHI_MHZ + c / 2 * (GR_MHZ - 2 * GPHI_MHZ)
    return gr, ge, gp


def show(name, value):
    if isinstance(value, (mp.mpf, float, np.floating)):
        print(f"{name:48s} {mp.nstr(mp.mpf(value), 16)}")
    else:
        print(f"{name:48s} {value}")


# ---- closed forms ----------------------------------------------------------

def closed_forms():
    show("splitting(eps=2.97)", splitting(GAP))
    wq = splitting(2)
    show("projection bar (eps=2)", GAP / wq)
    show("projection check (eps=2)", 2 / wq)
    # eps = 2 I_p dPhi  ->  dPhi/Phi0 = h f / (2 I_p Phi0)
    show("flux offset for eps=1 GHz (Phi0)", H * mp.mpf("1e9") / (2 * IP_NA * mp.mpf("1e-9") * PHI0))
    show("GHz per flux quantum", 2 * IP_NA * mp.mpf("1e-9") * PHI0 / H / mp.mpf("1e9"))

    for amp in (1, 2, 3):
        show(f"omega_ac(eps=0, Omega_d={amp})", omega_ac(mp.mpf(amp), GAP, WD))
        show(f"Omega_R(eps=0, Omega_d={amp})", rabi(0, mp.mpf(amp)))

    bar = mp.mpf(1)
    c = mixing(bar, GAP, WD)
    show("C(eps=0, Omega_d=1)", c)
    show("A(eps=0, Omega_d=1)", 1 - c / 2)
    show("B(eps=0, Omega_d=1)", 1 - (omega_ac(bar, GAP, WD) / bar) ** 2)
    gr, ge, gp = rates(c)
    show("Gamma_r_hat MHz", gr)
    show("Gamma_e_hat MHz", ge)
    show("gamma_phi_hat MHz", gp)
    show("Gamma_phi_hat MHz", (gr + ge) / 2 + gp)

    # alpha, beta at eps = 2, Omega_d = 2 (independent transcription of the coupling factors)
    eps = mp.mpf(2)
    wq = splitting(eps)
    bar = 2 * GAP / wq
    ac = omega_ac(bar, wq, WD)
    c = mixing(bar, wq, WD)
    a = 1 - c / 2
    b = 1 - (bar * wq / (wq**2 - WD**2)) ** 2
    om = rabi(eps, mp.mpf(2))
    show("Omega_R(eps=2, Omega_d=2)", om)
    show("alpha(eps=2, Omega_d=2)", eps / (wq * om) * (a * (wq + ac) + 2 * b * ac))
    show("beta(eps=2, Omega_d=2)", GAP / (wq * om) * (b * (wq + ac) + 2 * eps**2 / GAP**2 * a * ac))

    # exact shift with linewidth vs approximation, Gamma_phi = 25 MHz, bar = 1
    g = mp.mpf("0.025")
    dm, dp = GAP - WD, GAP + WD
    exact = mp.mpf(1) / 2 * mp.re(1 / mp.mpc(dm, g) + 1 / mp.mpc(dp, -g))
    approx = omega_ac(mp.mpf(1), GAP, WD)
    show("omega_ac with linewidth (bar=1, 25 MHz)", exact)
    show("relative linewidth correction", (exact - approx) / approx)

    # dip-splitting threshold: Omega_R(0) = omega_r
    thr = mp.findroot(lambda x: rabi(0, x) - WR, mp.mpf("2.5"))
    show("threshold Omega_d", thr)
    for amp in ("2.7", "3"):
        root = mp.findroot(lambda e: rabi(e, mp.mpf(amp)) - WR, mp.mpf("0.5"))
        show(f"resonance bias Omega_d={amp}", root)

    # resonant spectroscopy sideband at eps=0, Omega_d=2, sz=-1
    bar = mp.mpf(2)
    c = mixing(bar, GAP, WD)
    gr, ge, gp = rates(c)
    gphi_hat = ((gr + ge) / 2 + gp) / 1000
    beta = 1 - (bar * GAP / (GAP**2 - WD**2)) ** 2
    show("|s_s| resonant (Omega_s=1 MHz, sz=-1)", beta * mp.mpf("0.001") / (2 * gphi_hat))

    # power calibration, SI as written: Omega_d = 4 g_d sqrt(N_d),
    # sqrt(N_d) = (1/kappa_d)(C_c/2) sqrt(P/Z) sqrt(h omega_d / C_r), kappa_d = 3 omega_r / Q
    kappa_d = 3 * 2 * mp.pi * WR * mp.mpf("1e9") / mp.mpf("1.2e5")
    omega_d = 2 * mp.pi * WD * mp.mpf("1e9")
    p_w = mp.mpf(10) ** ((-20 - 30) / mp.mpf(10))
    root_n = (1 / kappa_d) * (mp.mpf("5e-15") / 2) * mp.sqrt(p_w / 50) * mp.sqrt(H * omega_d / mp.mpf("0.4e-12"))
    show("Omega_d(-20 dBm) GHz, uncalibrated", 4 * mp.mpf(3) ** mp.mpf("1.5") * G_MHZ / 1000 * root_n)

    # bare cavity
    kappa = WR / mp.mpf("1.2e5")
    show("kappa (GHz)", kappa)


# ---- dynamical oracles (monodromy) ----------------------------------------

SP = np.array([[0, 1], [0, 0]], dtype=complex)  # basis (e, g)
SM = SP.conj().T
SZ = np.diag([1.0, -1.0]).astype(complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def superop(h, jumps):
    # column-major vec: vec(A X B) = (B^T kron A) vec(X)
    L = -1j * (np.kron(I2, h) - np.kron(h.T, I2))
    for rate, c in jumps:
        cdc = c.conj().T @ c
        L += rate * (np.kron(c.conj(), c) - 0.5 * np.kron(I2, cdc) - 0.5 * np.kron(cdc.T, I2))
    return L


def driven_qubit(eps, amp, gr_mhz=10.0, gphi_mhz=20.0, wd=float(WD)):
    wq = float(splitting(eps))
    bar, chk = float(GAP) / wq, float(eps) / wq
    w = TWO_PI * wd
    jumps = [(TWO_PI * gr_mhz * 1e-3, SM), (0.5 * TWO_PI * gphi_mhz * 1e-3, SZ)]
    L0 = superop(0.5 * TWO_PI * wq * SZ, jumps)
    L1 = superop(TWO_PI * amp * (chk * SZ + bar * SX), [])  # times cos(w t)
    return (lambda t: L0 + np.cos(w * t) * L1), w


def periodic_state(gen, w):
    T = TWO_PI / w

    def rhs(t, y):
        U = y.reshape(4, 4, order="F")
        return (gen(t) @ U).reshape(-1, order="F")

    sol = solve_ivp(rhs, (0, T), np.eye(4, dtype=complex).reshape(-1, order="F"),
                    method="DOP853", rtol=1e-12, atol=1e-14)
    U = sol.y[:, -1].reshape(4, 4, order="F")
    vals, vecs = np.linalg.eig(U)
    v = vecs[:, np.argmin(abs(vals - 1))]
    rho0 = v.reshape(2, 2, order="F")
    rho0 /= np.trace(rho0)

    n = 1024
    ts = np.arange(n) * T / n
    traj = solve_ivp(lambda t, y: gen(t) @ y, (0, T), rho0.reshape(-1, order="F"),
                     method="DOP853", rtol=1e-12, atol=1e-14, t_eval=ts)
    rhos = [traj.y[:, k].reshape(2, 2, order="F") for k in range(n)]
    return ts, rhos


def fourier(ts, rhos, op, nu):
    # coefficient of e^{-i nu t} in <op>(t)
    vals = np.array([np.trace(op @ r) for r in rhos])
    return np.mean(vals * np.exp(1j * nu * ts))


def population_oracles():
    for eps in (-3.0, -1.5, 0.0, 1.5, 3.0):
        wq = float(splitting(eps))
        amp = 0.1 * abs(wq - float(WD)) * wq / float(GAP)
        gen, w = driven_qubit(eps, amp)
        ts, rhos = periodic_state(gen, w)
        show(f"<sz> oracle ratio=0.1 eps={eps} (Omega_d={amp:.6f})", fourier(ts, rhos, SZ, 0).real)
    gen, w = driven_qubit(0.0, 1.0)
    ts, rhos = periodic_state(gen, w)
    show("<sz> oracle eps=0 Omega_d=1", fourier(ts, rhos, SZ, 0).real)


def sideband_oracle():
    # Gamma_phi = Gamma_r/2 + gamma_phi = 25 MHz with Gamma_r = 10, gamma_phi = 20
    gen, w = driven_qubit(0.0, 1.0)
    ts, rhos = periodic_state(gen, w)
    for label, nu in (("+w_d", w), ("-w_d", -w)):
        c = fourier(ts, rhos, SP, nu)
        show(f"<sigma_+> component e^(-i({label})t)", f"{c.real:.12e} {c.imag:+.12e}")


def floquet_oracle():
    wq = float(GAP)
    w = TWO_PI * float(WD)
    T = TWO_PI / w
    for bar in (1.0, 2.0, 3.0):
        def rhs(t, y):
            h = 0.5 * TWO_PI * wq * SZ + TWO_PI * bar * np.cos(w * t) * SX
            return (-1j * h @ y.reshape(2, 2, order="F")).reshape(-1, order="F")

        sol = solve_ivp(rhs, (0, T), I2.reshape(-1, order="F"), method="DOP853", rtol=1e-13, atol=1e-15)
        U = sol.y[:, -1].reshape(2, 2, order="F")
        phases = np.angle(np.linalg.eigvals(U))
        diff = abs(phases[0] - phases[1]) / T  # rad/ns, defined modulo w
        guess = TWO_PI * float(GAP + omega_ac(mp.mpf(bar), GAP, WD))
        k = np.round((guess - diff) / w)
        cands = [diff + k * w, -diff + np.round((guess + diff) / w) * w]
        best = min(cands, key=lambda x: abs(x - guess))
        show(f"Floquet splitting bar={bar}", best / TWO_PI)


if __name__ == "__main__":
    closed_forms()
    population_oracles()
    sideband_oracle()
    floquet_oracle()
