#!/usr/bin/env python3
"""Refinement study for both discretizations.

Tabulates finite-difference eigenvalue errors against the closed-form
spectrum E_n^2 = 2 c hbar k n under grid halving, and the one-period
integration error under joint grid/step halving. Both should shrink by
~4x per level (second-order stencils, second-order midpoint step).
"""

import math
from argparse import ArgumentParser

import numpy as np

import majorana1d as mj


def get_args():
    parser = ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=6, help="eigenvalues per grid")
    parser.add_argument("--grids", type=int, nargs="+", default=[501, 1001, 2001, 4001])
    return parser.parse_args()


def eigenvalue_table(params, potential, model, grids, levels):
    print(f"eigenvalue |lambda_n - 2n| on y in [-12, 12], n < {levels}")
    header = "points   " + "".join(f"n={n:<11}" for n in range(levels))
    print(header)
    previous = None
    for n_points in grids:
        grid = mj.default_grid(model, n_points, 12.0)
        pair = mj.partner_potentials(params, potential, grid)
        solved = mj.eigensolve(mj.discretize(params, pair.v_minus), levels)
        errors = np.abs(
            np.array([e.energy_squared for e in solved]) - 2.0 * np.arange(levels)
        )
        print(f"{n_points:<8}" + "".join(f" {e:<11.3e}" for e in errors))
        if previous is not None:
            ratios = previous / errors
            print("ratio   " + "".join(f" {r:<11.2f}" for r in ratios))
        previous = errors
    print()


def pde_table(params, potential, model, grids):
    period = mj.density_period(model, 1)
    print("one-period integration error (n = 1, dt = T/steps)")
    print("points   steps   error        ratio")
    previous = None
    steps = 100
    for n_points in grids:
        grid = mj.default_grid(model, n_points)
        y = model.y_of_x(grid.points())
        psi1, psi2 = mj.spinor(model, 1, 0.0, y, math.pi / 2)
        initial = mj.MajoranaSpinorState(
            mj.GridFunction(grid, psi1), mj.GridFunction(grid, psi2)
        )
        _, final = mj.evolve_pde(initial, params, potential, period, dt=period / steps)
        r1, r2 = mj.spinor(model, 1, final.t, y, math.pi / 2)
        error = max(
            float(np.max(np.abs(final.psi1.values - r1))),
            float(np.max(np.abs(final.psi2.values - r2))),
        )
        ratio = "" if previous is None else f"{previous / error:.2f}"
        print(f"{n_points:<8} {steps:<7} {error:<12.3e} {ratio}")
        previous = error
        steps *= 2


def run():
    args = get_args()
    params = mj.PhysicalParams(mass=1.0)
    potential = mj.LinearPotential(1.0)
    model = mj.LinearModel(1.0, params)
    eigenvalue_table(params, potential, model, args.grids, args.levels)
    pde_table(params, potential, model, args.grids)


if __name__ == "__main__":
    run()
