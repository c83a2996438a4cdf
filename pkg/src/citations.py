"""
Literature references for every imported result a derivation may rest on

Certificates copy these strings verbatim into their ``tags`` list, so editing
one changes the id of every certificate that cites it.
"""

GRID_SPECIALIZATION = (
    "k^N generic points specialize to a grid complete intersection with "
    "Waldschmidt constant k (semicontinuity of the initial degree)"
)
STAR_CONFIGURATION = (
    "N+1 generic points are the coordinate points, a star configuration: "
    "'Comparing powers and symbolic powers of ideals', J. Algebraic Geom. 19 (2010)"
)
N_PLUS_TWO_POINTS = (
    "N+2 generic points: 'Interpolation and the weak Lefschetz property', "
    "Trans. Amer. Math. Soc. 372 (2019)"
)
N_PLUS_THREE_POINTS = (
    "N+3 generic points: 'Asymptotics of linear systems, with connections to "
    "line arrangements', Prop. B.1.1"
)
P3_GENERIC_POINTS = (
    "'Containments of symbolic powers of ideals of generic points in P^3', "
    "Proc. Amer. Math. Soc. 143 (2015), Prop. 11"
)

_STABLE_CONTAINMENT = (
    "'Chudnovsky's conjecture and the stable Harbourne-Huneke containment'"
)
P4_EIGHT_POINTS = f"{_STABLE_CONTAINMENT}, Lemma 3.9"
DOUBLE_POINT_SPLIT = f"{_STABLE_CONTAINMENT}, Thm. 3.2"
CLUMPING = f"{_STABLE_CONTAINMENT}, Prop. 3.6"
CHUDNOVSKY_TYPE = f"{_STABLE_CONTAINMENT}, Lemmas 4.5, 4.9 and Thm. 4.10"

WALDSCHMIDT_DECOMPOSITION = (
    "Waldschmidt decomposition: 'Local effectivity in projective spaces'"
)
