"""Golden copies of the four single-edge gadget tables, as plain text.

Vertex names are the role names of the single-edge gadget: base edge ``a b``
oriented from ``a`` to ``b``, head ``c``, label vertices ``l1 .. l4``.  The
row lists below drive the computation; the golden text is what a correct
computation must render to, byte for byte.
"""

# Sets C \ A over the base A = {a, b}, in emission order.
STRONG_ROWS = [
    ("l2",),
    ("l3",),
    ("l4",),
    ("l1", "l2"),
    ("l1", "l4"),
    ("l2", "l3"),
    ("l3", "l4"),
    ("c", "l1"),
    ("l1", "l2", "l3"),
    ("l1", "l2", "l4"),
    ("l1", "l3", "l4"),
    ("l2", "l3", "l4"),
    ("l1", "l2", "l3", "l4"),
    ("c", "l1", "l2", "l3", "l4"),
]

# 4-cycles, free amalgams (whole, left, right, base), and direct rows.
SMALL_CYCLES = [
    ("l1", "l2", "l3", "l4"),
    ("l2", "l3", "a", "b"),
    ("l3", "l4", "a", "b"),
    ("l1", "l2", "l4", "a"),
    ("l2", "l3", "l4", "a"),
]
SMALL_AMALGAMS = [
    (("l1", "l2", "l3", "a", "b"), ("l2", "l3", "a", "b"), ("l1", "l2"), ("l2",)),
    (("l1", "l3", "l4", "a", "b"), ("l3", "l4", "a", "b"), ("l1", "l4"), ("l4",)),
    (("l1", "l2", "l4", "a", "b"), ("l1", "l2", "l4", "a"), ("a", "b"), ("a",)),
    (("l1", "l2", "l3", "l4", "b"), ("l1", "l2", "l3", "l4"), ("l3", "b"), ("l3",)),
]
SMALL_DIRECT = [
    ("l2", "l3", "l4", "a", "b"),
    ("l1", "l2", "l3", "l4", "a"),
    ("l1", "l2", "l3", "l4", "a", "b"),
]

# Y_1 .. Y_11, measured over A together with the head.
Y_ROWS = [
    ("c", "l1", "l2", "a"),
    ("c", "l1", "l4", "a"),
    ("c", "l1", "l2", "l3", "a"),
    ("c", "l1", "l2", "l3", "b"),
    ("c", "l1", "l2", "l3", "a", "b"),
    ("c", "l1", "l3", "l4", "a"),
    ("c", "l1", "l3", "l4", "b"),
    ("c", "l1", "l3", "l4", "a", "b"),
    ("c", "l1", "l2", "l3", "l4", "a"),
    ("c", "l1", "l2", "l3", "l4", "b"),
    ("c", "l1", "l2", "l3", "l4", "a", "b"),
]

# X / Y pairs; Y always completes X to the whole gadget.
CLOSURE_ROWS = [
    ("l1", "l2", "l3", "l4"),
    ("l1", "l2", "l3"),
    ("l1", "l2", "l4"),
    ("l1", "l3", "l4"),
    ("l2", "l3", "l4"),
    ("l1", "l2"),
    ("l1", "l3"),
    ("l1", "l4"),
    ("l2", "l3"),
    ("l2", "l4"),
    ("l3", "l4"),
    ("l1",),
    ("l2",),
    ("l3",),
    ("l4",),
]

GOLDEN_STRONG = """\
C \\ A | delta(C/A)
l2 | 1
l3 | 1
l4 | 1
l1, l2 | 2
l1, l4 | 2
l2, l3 | 1
l3, l4 | 1
c, l1 | 3
l1, l2, l3 | 2
l1, l2, l4 | 2
l1, l3, l4 | 2
l2, l3, l4 | 1
l1, l2, l3, l4 | 1
c, l1, l2, l3, l4 | 2
"""

GOLDEN_SMALL = """\
C | proof that C is in C_F
l1 l2 l3 l4, l2 l3 a b, l3 l4 a b, l1 l2 l4 a, l2 l3 l4 a | C is a 4-cycle
l1 l2 l3 a b | free amalgam of l2 l3 a b, l1 l2 over l2
l1 l3 l4 a b | free amalgam of l3 l4 a b, l1 l4 over l4
l1 l2 l4 a b | free amalgam of l1 l2 l4 a, a b over a
l1 l2 l3 l4 b | free amalgam of l1 l2 l3 l4, l3 b over l3
C | delta(C) | F(|C|)
l2 l3 l4 a b | 4 | F(5) < 4
l1 l2 l3 l4 a | 4 | F(5) < 4
l1 l2 l3 l4 a b | 4 | F(6) < 4
"""

GOLDEN_Y = """\
J u X | label | delta(J u X / A u {c})
c l1 l2 a | Y1 | 1
c l1 l4 a | Y2 | 1
c l1 l2 l3 a | Y3 | 2
c l1 l2 l3 b | Y4 | 2
c l1 l2 l3 a b | Y5 | 1
c l1 l3 l4 a | Y6 | 2
c l1 l3 l4 b | Y7 | 2
c l1 l3 l4 a b | Y8 | 1
c l1 l2 l3 l4 a | Y9 | 1
c l1 l2 l3 l4 b | Y10 | 2
c l1 l2 l3 l4 a b | Y11 | 0
"""

GOLDEN_CLOSURE = """\
X / Y | delta(X/Y)
l1, l2, l3, l4 / a, b, c | 0
l1, l2, l3 / l4, a, b, c | -1
l1, l2, l4 / l3, a, b, c | -1
l1, l3, l4 / l2, a, b, c | -1
l2, l3, l4 / l1, a, b, c | -1
l1, l2 / l3, l4, a, b, c | -1
l1, l3 / l2, l4, a, b, c | -2
l1, l4 / l2, l3, a, b, c | -1
l2, l3 / l1, l4, a, b, c | -1
l2, l4 / l1, l3, a, b, c | -2
l3, l4 / l1, l2, a, b, c | -1
l1 / l2, l3, l4, a, b, c | -1
l2 / l1, l3, l4, a, b, c | -1
l3 / l1, l2, l4, a, b, c | -1
l4 / l1, l2, l3, a, b, c | -1
"""

GOLDEN = {
    "strong": GOLDEN_STRONG,
    "small_structures": GOLDEN_SMALL,
    "y_table": GOLDEN_Y,
    "closure": GOLDEN_CLOSURE,
}
