#!/usr/bin/env python3
"""Generate ordinates of zeros of L(s, Delta) on the critical line Re(s) = 6.

Uses the exact incomplete-gamma expansion of the completed L-function

    Lambda(s) = sum_n tau(n) [ (2 pi n)^-s Gamma(s, 2 pi n)
                             + (2 pi n)^(s-12) Gamma(12 - s, 2 pi n) ]

evaluated in mpmath at a working precision large enough to absorb the
e^{-pi t / 2} cancellation. Lambda(6 + it) is real, so zeros are sign changes.

    python3 scripts/gen_delta_zeros.py 260 fixtures/delta_zeros_T260.txt
"""
import sys

import mpmath as mp


def tau_table(n_max):
    c = [0] * (n_max + 1)
    c[0] = 1
    for m in range(1, n_max + 1):
        for _ in range(24):
            for i in range(n_max, m - 1, -1):
                c[i] -= c[i - m]
    return [0] + c[:n_max]


def make_z(tau):
    def z(t):
        t = mp.mpf(t)
        mp.mp.dps = int(0.7 * t) + 30
        s = mp.mpc(6, t)
        total = mp.mpf(0)
        for n in range(1, int(t / 4) + 16):
            x = 2 * mp.pi * n
            total += tau[n] * (x ** (-s) * mp.gammainc(s, x) + x ** (s - 12) * mp.gammainc(12 - s, x))
        # normalized so that values are O(1)
        return total.real * mp.exp(mp.pi * t / 2) * (t + 1) ** -5.5
    return z


def smooth_count(t):
    mp.mp.dps = 30
    s = mp.mpc(6, t)
    return float((mp.im(mp.loggamma(s)) - t * mp.log(2 * mp.pi)) / mp.pi + 1)


def main():
    t_max = float(sys.argv[1])
    path = sys.argv[2]
    tau = tau_table(int(t_max / 4) + 20)
    assert tau[1:4] == [1, -24, 252]
    z = make_z(tau)
    step = 0.2
    zeros = []
    t = 1.0
    prev = z(t)
    while t + step <= t_max:
        nxt = z(t + step)
        if prev * nxt < 0:
            root = mp.findroot(z, (mp.mpf(t), mp.mpf(t + step)), solver="illinois", tol=1e-24)
            zeros.append(float(root))
            print(len(zeros), zeros[-1], flush=True)
        t += step
        prev = nxt
    expected = smooth_count(t)
    print(f"found {len(zeros)} zeros up to {t}; smooth count {expected:.2f}", flush=True)
    with open(path, "w") as fh:
        fh.write(f"# ordinates of zeros of L(s, Delta) (analytic normalization, centre 1/2); complete to {t:.4f}\n")
        for g in zeros:
            fh.write(f"{g:.9f}\n")


if __name__ == "__main__":
    main()
