"""Order-of-convergence study for the explicit GDHM solutions.

For Q2 and a batch of random strong quadruples, evaluates gdhm_residual and
zcc_residual over a ladder of step sizes and reports the observed order
``log(r(h1) / r(h2)) / log(h1 / h2)``, which should sit at 2.
"""

import argparse

import numpy as np

from skdirac.evolution import gdhm_residual, zcc_residual
from skdirac.fixtures import q2
from skdirac.sampling import random_strong_quadruple

STEPS = (4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4, 1e-4)


def ladder(fn):
    vals = [fn(h) for h in STEPS]
    orders = [np.log(a / b) / np.log(h1 / h2) for a, b, h1, h2 in zip(vals, vals[1:], STEPS, STEPS[1:])]
    return vals, orders


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10, help="random quadruples besides Q2")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--t", type=float, default=0.3)
    ap.add_argument("--k", type=int, default=1)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cases = [("Q2", q2())]
    for i in range(args.count):
        n, m1, m2 = int(rng.integers(1, 5)), int(rng.integers(1, 3)), int(rng.integers(1, 3))
        cases.append((f"rand{i} n={n} m=({m1},{m2})", random_strong_quadruple(rng, n, m1, m2)))

    print("h ladder: " + " ".join(f"{h:.1e}" for h in STEPS))
    for name, q in cases:
        g, go = ladder(lambda h: gdhm_residual(q, args.t, args.k, h))
        z, zo = ladder(lambda h: zcc_residual(q, args.t, args.k, 2j, h))
        print(f"{name:<22} gdhm {g[-1]:.2e} orders {' '.join(f'{o:.2f}' for o in go)}")
        print(f"{'':<22} zcc  {z[-1]:.2e} orders {' '.join(f'{o:.2f}' for o in zo)}")


if __name__ == "__main__":
    main()
