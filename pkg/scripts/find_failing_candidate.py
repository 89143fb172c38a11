#!/usr/bin/env python3
"""Search for a 3-component characteristic function with a root-twist
candidate that is NOT positive definite.

Blueprint-built functions never produce failing candidates (their inverse
transforms stay nonnegative for every phase), so the n**k bound is attained.
To witness a non-attained bound we need a hand-built f whose outer component
mixes harmonically related knots with lopsided weights: the cosine factor of
the inverse transform then exceeds 2 somewhere, and flipping its sign (the
n=2 twist) drives the transform negative.

Candidate family searched here: kernel half-width 1, outer knots at 2c and 3c
(one merged component (2c-1, 3c+1)) with weights w1, w2:

    f(x) = K(x) + w1*(K(x-2c) + K(x+2c)) + w2*(K(x-3c) + K(x+3c))

Inverse factor of f:        1 + 2 w1 cos(2cu) + 2 w2 cos(3cu)   (must be >= 0)
Inverse factor of a twist:  1 + 2 w1 cos(th + 2cu) + 2 w2 cos(th + 3cu)

The script scans (w1, w2) and reports, for each admissible f, how negative
the twisted factor gets for the half-turn twist (n=2 candidate) and for a
generic non-root phase, along with the most negative value of the actual
inverse transform (factor times the kernel inverse, which decays like 1/t^2).

Usage: python scripts/find_failing_candidate.py
"""

import numpy as np

C = 1.5  # knots at 3.0 and 4.5; component (2, 5.5)


def factor(w1, w2, theta, ts):
    return 1.0 + 2.0 * w1 * np.cos(theta + 2 * C * ts) + 2.0 * w2 * np.cos(
        theta + 3 * C * ts
    )


def kernel_inverse(ts):
    return np.sinc(ts / (2 * np.pi)) ** 2 / (2 * np.pi)


def main():
    ts = np.linspace(0.0, 60.0, 600_001)
    kin = kernel_inverse(ts)
    best = None
    for w1 in np.arange(0.30, 0.49, 0.01):
        for w2 in np.arange(0.05, 0.35, 0.01):
            base_min = factor(w1, w2, 0.0, ts).min()
            if base_min < 0.02:  # f must be safely positive definite
                continue
            half_turn = (factor(w1, w2, np.pi, ts) * kin).min()
            odd_phase = (factor(w1, w2, np.pi / 7.0, ts) * kin).min()
            if half_turn < -1e-3 and odd_phase < -1e-3:
                score = min(-half_turn, -odd_phase)
                if best is None or score > best[0]:
                    best = (score, w1, w2, base_min, half_turn, odd_phase)
    if best is None:
        print("no admissible pair found in the scanned box")
        return
    score, w1, w2, base_min, half_turn, odd_phase = best
    print(f"knot scale c = {C}: knots at {2*C} and {3*C}, component (2.0, 5.5)")
    print(f"weights      w1 = {w1:.4f}  w2 = {w2:.4f}")
    print(f"f factor min          = {base_min:+.6f}  (must be >= 0)")
    print(f"half-turn inverse min = {half_turn:+.6f}  (n=2 candidate, must fail)")
    print(f"pi/7-twist inverse min= {odd_phase:+.6f}  (non-root phase, must fail)")


if __name__ == "__main__":
    main()
