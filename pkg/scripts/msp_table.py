"""Mode separation product of the phi = pi two-mode state against mode offset.

Shows where the continuum JSI peak separation departs from sqrt(2)*delta
because the two sinc lobes overlap and pull each other inward.
"""

import argparse
import math

import numpy as np

from tfsynth.biphoton import SimplifiedJsaParams, SuperpositionParams, two_mode_jsa
from tfsynth.fourier import antidiagonal_peaks, ft2, mode_separation_product
from tfsynth.grid import make_axis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1024)
    ap.add_argument("--span", type=float, default=16.0)
    ap.add_argument("--deltas", default="0.15:0.6:0.05")
    args = ap.parse_args()

    start, stop, step = (float(x) for x in args.deltas.split(":"))
    axis = make_axis(args.n, 0.0, args.span, "frequency")
    params = SimplifiedJsaParams()
    print(f"{'delta':>7} {'jsi_thz':>9} {'sqrt2*d':>9} {'jti_ps':>8} {'msp':>7}")
    for delta in np.arange(start, stop + step / 2, step):
        jsa = two_mode_jsa(params, SuperpositionParams(delta, math.pi), axis)
        jsi = antidiagonal_peaks(jsa.intensity()).separation
        jti = antidiagonal_peaks(ft2(jsa).intensity()).separation
        msp = mode_separation_product(jsi, jti) if jsi and jti else float("nan")
        print(f"{delta:7.4f} {jsi or float('nan'):9.4f} {math.sqrt(2) * delta:9.4f} "
              f"{jti or float('nan'):8.4f} {msp:7.4f}")


if __name__ == "__main__":
    main()
