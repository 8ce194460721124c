"""Expected values of the worked examples, typed in independently of the package.

Simplices are written as index tuples (1-based), translations as the sum of
the singleton simplices in a decomposition.
"""

# spanning-tree polynomial of the weighted K4-minus-an-edge graph
FG_TERMS = [
    "x1+x2+x3-6", "x1+x2+x4-7", "x1+x3+x4-8", "x2+x3+x4-9",
    "x1+x2+x5-6.5", "x1+x3+x5-7.5", "x2+x4+x5-9.5", "x3+x4+x5-10.5",
]
FG_NEWTON = {
    (1, 4): 1, (2, 3): 1, (1, 2, 5): 1, (1, 3, 5): 1, (2, 4, 5): 1, (3, 4, 5): 1,
    (1, 2, 3, 5): -1, (1, 2, 4, 5): -1, (1, 3, 4, 5): -1, (2, 3, 4, 5): -1,
    (1, 2, 3, 4, 5): 1,
}
FG_DENOMINATOR = [
    "max(x1, x2-1, x3-2, x5-2.5)", "max(x1, x2-1, x4-3, x5-2.5)",
    "max(x1, x3-2, x4-3, x5-2.5)", "max(x2, x3-1, x4-2, x5-1.5)",
]
FG_NUMERATOR = [
    "max(x1, x2-1, x3-2, x4-3, x5-5/2)", "max(x1, x2-1, x5-5/2)", "max(x1, x3-2, x5-5/2)",
    "max(x2, x4-2, x5-3/2)", "max(x3, x4-1, x5-1/2)", "max(x1, x4-3)", "max(x2, x3-1)",
]

# quadratic M-convex example over K4
QUAD = (
    "max(3x1-18, 3x2-45, 3x3-54, 3x4-81, x1+2x2-34, x1+2x3-34, x1+2x4-42, 2x1+x2-25, "
    "2x1+x3-22, 2x1+x4-21, x2+2x3-45, x2+2x4-53, 2x2+x3-42, 2x2+x4-41, x3+2x4-54, "
    "2x3+x4-45, x1+x2+x3-31, x1+x2+x4-30, x1+x3+x4-29, x2+x3+x4-40)"
)
# (coefficients on simplices with >= 2 indices, translation)
QUAD_CELLS = [
    ({(1, 2): 1, (2, 3, 4): 1}, (1, 0, 0, 0)),
    ({(1, 2, 3, 4): 1}, (1, 0, 0, 1)),
    ({(1, 2): 1, (2, 3): 1, (2, 4): 1, (3, 4): 1, (2, 3, 4): -1}, (0, 0, 0, 0)),
    ({(1, 2): 1, (2, 3, 4): 1}, (0, 0, 1, 0)),
    ({(3, 4): 1, (1, 2, 3): 1, (1, 2, 4): 1, (1, 2, 3, 4): -1}, (0, 0, 1, 0)),
    ({(1, 2, 3, 4): 1}, (0, 0, 2, 0)),
    ({(1, 2, 3, 4): 1}, (0, 0, 0, 2)),
    ({(1, 2, 3, 4): 1}, (0, 0, 1, 1)),
    ({(3, 4): 1, (1, 2, 3): 1, (1, 2, 4): 1, (1, 2, 3, 4): -1}, (0, 0, 0, 1)),
    ({(1, 2): 1, (2, 3, 4): 1}, (0, 0, 0, 1)),
    ({(1, 2): 1, (2, 3, 4): 1}, (0, 1, 0, 0)),
    ({(1, 2, 3, 4): 1}, (1, 0, 1, 0)),
    ({(3, 4): 1, (1, 2, 3): 1, (1, 2, 4): 1, (1, 2, 3, 4): -1}, (1, 0, 0, 0)),
    ({(1, 2, 3, 4): 1}, (2, 0, 0, 0)),
]
QUAD_DENOMINATOR = [
    "max(x2, x3-11, x4-10)", "max(x1, x2-11, x3-15, x4-11)",
    "max(x1, x2-11, x3-12, x4-25)", "max(x1, x2-9, x3-8, x4-7)",
]
QUAD_NUMERATOR = [
    "max(x1, x2-9, x3-12, x4-7)", "max(x1, x2-9, x3-8, x4-21)",
    "max(x1, x2-11, x3-12, x4-39)", "max(x1, x2-11, x3-16, x4-25)",
    "max(x1, x2-11, x3-20, x4-11)", "max(x1, x2-7, x3-4, x4-3)", "max(x2-2, x3-1, x4)",
]

# degree-2 plane curve example over the ten-polygon basis
FQ = "max(2x1+2x2, x1+3x2-2, x1+x2+2x3-3, 3x1+x3-1, x1+2x2+x3-4, 4x1-3)"
FQ_CELLS = [
    ({"P1": 1, "P2": -1, "P3": 1, "P4": -1, "P10": 1}, (1, 0, 1)),
    ({"P1": -1, "P4": 2, "P7": 1}, (1, 1, -2)),
    ({"P3": -1, "P4": 2, "P9": 1}, (2, 0, -2)),
]
FQ_DENOMINATOR = [
    "max(2x1, 2x3-10/3, x2+x3-2)", "max(x1+x3, 2x3-5/3, x2+x3-1/3)",
    "max(2x3, 2x2-1, x1+x3-2)", "max(2x1, 2x3-5, x1+x2-2)",
]
# (unit, multiplicity); the monomial part is x1 - 3x3
HQ_FACTORS = [
    ("max(2x3-5/2, x1+x3, x2+x3-2)", 2), ("max(2x3-8/3, x1+x3-1, 2x2)", 1),
    ("max(x2+x3-2, 2x1)", 1), ("max(2x3, x1+x3-2, x2+x3-1/2)", 2),
    ("max(2x3-10/3, x1+x2-1/3, 2x1)", 1),
]
HQ_MONOMIAL = ((1, 0, -3), 0)

# transpose of the 3 x 14 H-matrix of the homogenised ten-polygon basis
H_FIG2_ROWS = [
    (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (1, 1, 0), (-1, -1, 0), (1, -1, 0),
    (-1, 1, 0), (1, 2, 0), (-1, -2, 0), (2, 1, 0), (-2, -1, 0), (1, 1, 1), (-1, -1, -1),
]
DEGREE2_EDGES = {(0, 1), (1, 0), (1, 1), (1, -2), (-2, 1), (1, -1)}

# orientations on the rows (1,0),(0,1),(1,1),(1,-1),(1,2),(2,1)
ORIENTATION_ROWS = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (1, 2, 0), (2, 1, 0)]
FIG2_SIGNS = [-1, -1, 1, -1, 1, 1]
FIG3_SIGNS = [-1, -1, 1, 1, -1, -1]

# cubic over K3 with five maximal cells and three unit factors
H_K3 = ("max(x2+2x3-4, 2x2+x3-2, 3x2-1, x1+2x3-3, x1+x2+x3-1, x1+2x2, 2x1+x3-1, "
        "2x1+x2, 3x1-3)")
H_K3_FACTORS = ["max(x1, x2, x3-2)", "max(x1-3, x2, x3-1)", "max(x1, x2-1)"]
