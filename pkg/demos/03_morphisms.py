"""Coordinate maps, tangent lifts and bundle morphism composition.

The worked example reduces a three-dimensional tangent bundle to a
rank-2 frame bundle through the origin reflection s_O.  Composing the
pieces functionally is not the same as multiplying their matrices
naively; this script shows the right way and the trap.

Run as: python3 demos/03_morphisms.py
"""

from algebroids import (
    VBMorphism,
    apply_morphism,
    builtin_data,
    compose,
    compose_maps,
    matmul,
    tangent_bundle,
    tangent_lift,
)

data = builtin_data()
tb = tangent_bundle(data.t_chart)

# The reflection is its own inverse, and its tangent lift is -I.
s_o = data.s_o
print("s_O forward:", s_o.forward)
ts = tangent_lift(s_o)
print("T(s_O) matrix:")
print(ts.matrix)

double = compose_maps(s_o, s_o)
print("s_O o s_O is the identity:", double.forward == tuple(
    data.t_chart.var(c) for c in data.t_chart.coords
))

# ------------------------------------------------------------------
# The reduction morphism pairs the matrix R with the identity base
# map; postcomposing with the tangent lift gives the morphism whose
# display matrix the worked example tabulates as g.
from algebroids import identity_map

r_morph = VBMorphism(tb, data.frame, identity_map(data.t_chart), data.r)
g_morph = compose(r_morph, ts)
print("stored matrix of the composite:")
print(g_morph.matrix)
print("display matrix (over the source chart):")
print(g_morph.display_matrix())

# Functional check on a concrete section.
z = tb.section([data.t_chart.var("xt2"), data.t_chart.var("xt1"), data.t_chart.var("xt3")])
step_by_step = apply_morphism(r_morph, apply_morphism(ts, z))
one_shot = apply_morphism(g_morph, z)
print("compose == apply twice:", one_shot == step_by_step)

# ------------------------------------------------------------------
# The trap: multiplying the two stored matrices without moving the
# outer one through the base map gives a different morphism.
naive = VBMorphism(
    tb, data.frame, compose_maps(r_morph.base, ts.base), matmul(ts.matrix, data.r)
)
print("naive matrix product agrees:", apply_morphism(naive, z) == one_shot)
