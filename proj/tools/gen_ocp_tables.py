#!/usr/bin/env python3
"""Regenerate the illustrative OCP tables shipped in data/.

Both curves are closed-form fits from the literature sampled onto a grid.
The graphite curve gets a small linear tilt so it stays strictly decreasing
on its upper plateau. Neither table is fitted to a particular cell.
"""
import numpy as np
from pathlib import Path


def graphite(x):
    t = np.tanh
    return (1.9793 * np.exp(-39.3631 * x) + 0.2482
            - 0.0909 * t(29.8538 * (x - 0.1234))
            - 0.04478 * t(14.9159 * (x - 0.2769))
            - 0.0205 * t(30.4444 * (x - 0.6103))
            + 0.03 * (1.0 - x))


def nmc811(y):
    t = np.tanh
    return (-0.8090 * y + 4.4875
            - 0.0428 * t(18.5138 * (y - 0.5542))
            - 17.7326 * t(15.7890 * (y - 0.3117))
            + 17.5842 * t(15.9308 * (y - 0.3120)))


def write(path, xs, fn, header):
    vs = fn(xs)
    assert np.all(np.diff(vs) < 0), path
    with open(path, "w") as f:
        f.write(f"# {header}\n# stoichiometry volts\n")
        for x, v in zip(xs, vs):
            f.write(f"{x:.6f} {v:.9f}\n")


if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "data"
    xg = np.unique(np.concatenate([np.linspace(0.0, 0.1, 41), np.linspace(0.1, 1.0, 121)]))
    write(out / "ocp_graphite.txt", xg, graphite, "graphite OCP (illustrative)")
    write(out / "ocp_nmc811.txt", np.linspace(0.0, 1.0, 201), nmc811, "NMC811 OCP (illustrative)")
