"""Simulated HOM scans over temperature and the phases recovered by fitting them."""

import argparse
import math

import numpy as np

from tfsynth.biphoton import SimplifiedJsaParams, SuperpositionParams, two_mode_jsa
from tfsynth.grid import make_axis
from tfsynth.herald import anchored_calibration
from tfsynth.interference import calibration_eval, fit_linear, hom_fit, hom_scan, phase_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--temps", default="40,45,50,55,60,65")
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--span", type=float, default=16.0)
    args = ap.parse_args()

    axis = make_axis(args.n, 0.0, args.span, "frequency")
    tau = np.arange(-15.0, 15.0 + 1e-9, 0.05)
    cal = anchored_calibration()
    rows = []
    print("temp_c delta_thz phi_set_pi fit_freq_thz fit_phase_pi phase_err_pi")
    for temp in (float(t) for t in args.temps.split(",")):
        delta, phi = calibration_eval(cal, temp)
        fit = hom_fit(hom_scan(two_mode_jsa(SimplifiedJsaParams(), SuperpositionParams(delta, phi), axis), tau))
        rows.append((temp, fit.freq))
        print(f"{temp:g} {delta:.4f} {(phi / math.pi) % 2:.3f} {fit.freq:.4f} {fit.phase_over_pi:.3f} "
              f"{phase_error(fit.phase, phi) / math.pi:.4f}")
    slope, intercept, r2 = fit_linear(rows)
    print(f"fitted offset slope {slope:.5f} THz/C (r2 {r2:.6f})")


if __name__ == "__main__":
    main()
