"""Trajectories: control integration, Lagrange flow, equivalence.

Uses the bundled scenario file, the same one the command line reads.

Run as: python3 demos/05_control_runs.py
"""

import math
from fractions import Fraction
from importlib import resources

from algebroids import (
    builtin_data,
    integrate,
    load_scenario,
    solve_el,
    verify_paper,
    verify_transform,
)

path = resources.files("algebroids").joinpath("scenarios", "worked_example.scn")
scen = load_scenario(str(path))

# ------------------------------------------------------------------
# Constant input y = (1, 0, 0) pushes the reflected system straight
# down the third axis with unit energy cost.
traj = integrate(
    scen.control,
    lambda t: (1, 0, 0),
    scen.simulate.x0,
    scen.simulate.horizon,
    scen.simulate.dt,
)
print("simulate: %d samples" % len(traj.times))
print("final state:", tuple(round(v, 12) for v in traj.states[-1]))
print("energy is constant at", traj.energies[0], "drift", traj.energy_drift())
print("running cost:", round(traj.final_cost, 12))

# ------------------------------------------------------------------
# The Lagrange flow of the rank-2 model has closed-form solutions:
# z = (sech t, tanh t), x = (e^t, cosh t, 1 + log cosh t).
el = solve_el(scen.el)
t_end = el.times[-1]
x = el.states[-1]
z = el.velocities[-1]
print()
print("euler-lagrange to t = %g:" % t_end)
print("  x vs closed form: %.3e  %.3e  %.3e" % (
    abs(x[0] - math.exp(t_end)),
    abs(x[1] - math.cosh(t_end)),
    abs(x[2] - (1 + math.log(math.cosh(t_end)))),
))
print("  z vs closed form: %.3e  %.3e" % (
    abs(z[0] - 1 / math.cosh(t_end)),
    abs(z[1] - math.tanh(t_end)),
))
print("  energy drift over the whole run: %.3e" % el.energy_drift())

# ------------------------------------------------------------------
# The two presentations of the system are symbolically equivalent
# under the mirror map, and numerically the mirrored trajectories
# agree to the last bit.
data = builtin_data()
print()
print("mirror map carries one system to the other:",
      verify_transform(data.sys_hat, data.sys_tilde, data.mirror))

controls = lambda t: (1.0, t, t * t)
x0 = (0.25, -0.5, 1.0)
a = integrate(data.sys_hat, controls, x0, Fraction(1), Fraction(1, 1000))
b = integrate(data.sys_tilde, controls, tuple(-v for v in x0), Fraction(1), Fraction(1, 1000))
drift = max(abs(p + q) for xa, xb in zip(a.states, b.states) for p, q in zip(xa, xb))
print("max |x_tilde + x| over the run:", drift)

# ------------------------------------------------------------------
# And the full battery of symbolic identities, one line per check.
print()
print(verify_paper().text())
