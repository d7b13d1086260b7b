"""Curated instances shared by the lifting, application and acceptance tests.

Each entry is ((d, m, n, f), ideal generators, gens[, boundary]).
"""

T2_CASES = [
    ((0, 0, 0, "t"), ["t-2"], ["t-2", "(t-2)^2"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1", "t-2"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1+(t-2)^3", "t-2+x1^3"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1*(t-1)", "t-2+x1^2"]),
    ((0, 1, 0, "t"), ["x1-1", "t-3"], ["x1-1+(t-3)^2", "t-3+(x1-1)^2"]),
    ((0, 1, 0, "t^2+1"), ["x1-1", "t-3"], ["x1-1+(t-3)^2", "t-3+(x1-1)^2"]),
    ((0, 1, 1, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2", "x1*(t-2)"]),
    ((0, 1, 1, "t"), ["x1", "y1-2", "t-2"], ["x1+(y1-2)^2", "y1-2+x1*(t-2)", "t-2"]),
    ((0, 1, 1, "t-2"), ["x1", "y1-1"], ["x1", "y1-1+x1^2", "x1*y1"]),
    ((0, 0, 1, "t"), ["y1-2", "t-2"], ["y1-2+(t-2)^2", "t-2"]),
    ((0, 1, 1, "t"), ["x1", "y1-2"], ["x1+(y1-2)^2", "y1-2+x1^2", "x1*(y1-2)"]),
    ((0, 1, 0, "t"), ["x1"], ["x1", "x1^2"]),
    ((0, 2, 0, "t"), ["x1", "x2", "t-2"], ["x1+x2^2", "x2+(t-2)^2", "t-2+x1^2"]),
    ((1, 1, 0, "t"), ["x1", "z1-1"], ["x1+(z1-1)^2", "z1-1+x1^2", "x1*(z1-1)"]),
    ((0, 0, 1, "t"), ["y1-2"], ["y1-2", "(y1-2)^2"]),
    ((0, 1, 0, "t-2"), ["x1-t"], ["x1-t", "(x1-t)^2"]),
    ((0, 2, 0, "t"), ["x1-x2", "t-2"], ["x1-x2+(t-2)^2", "t-2", "(x1-x2)^2"]),
    ((0, 1, 1, "t"), ["x1*y1-1", "t-2"], ["x1*y1-1", "t-2+(x1*y1-1)^2", "(t-2)*x1"]),
    ((0, 0, 0, "t^2+1"), ["t-2"], ["t-2", "(t-2)^2"]),
    ((0, 1, 1, "t"), ["x1-y1", "t-3"], ["x1-y1+(t-3)^2", "t-3", "x1-y1"]),
    ((1, 0, 1, "t"), ["z1-y1", "t-2"], ["z1-y1", "t-2+(z1-y1)^2", "(z1-y1)*(t-2)"]),
]

T3_CASES = [
    ((0, 0, 0, "t"), ["t-2"], ["t-2", "(t-2)^2"], ["-1", "1"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2"], ["1", "x1"]),
    ((0, 1, 1, "t"), ["x1", "y1-2"], ["x1+(y1-2)^2", "y1-2+x1^2", "x1*(y1-2)"], ["x1", "y1-2", "0"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2"], ["x1+1+x1^2", "x1^2-1"]),
    ((0, 1, 0, "t"), ["x1-1"], ["x1-1", "(x1-1)^2", "(x1-1)*t"], ["x1-1", "0", "x1-1"]),
    ((0, 1, 1, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2", "x1*(t-2)"], ["1", "0", "0"]),
    ((0, 0, 1, "t"), ["y1-2", "t-2"], ["y1-2+(t-2)^2", "t-2"], ["y1-1", "-1"]),
    ((0, 1, 0, "t^2+1"), ["x1-1", "t-3"], ["x1-1+(t-3)^2", "t-3+(x1-1)^2"], ["1", "x1"]),
    ((0, 1, 0, "t-2"), ["x1-t"], ["x1-t", "(x1-t)^2", "(x1-t)*t"], ["x1-1", "0", "x1-1"]),
    ((0, 1, 1, "t"), ["x1", "y1-2"], ["x1+(y1-2)^2", "y1-2+x1^2", "x1*(y1-2)"],
     ["x1+(y1-2)^2", "y1-2", "x1*(y1-2)+x1^2"]),
    ((0, 2, 0, "t^2+1"), ["x1", "x2-1"], ["x1+(x2-1)^2", "x2-1", "x1^2"], ["x1", "x2-1+x1^2", "0"]),
    ((1, 1, 0, "t"), ["x1", "z1"], ["x1+z1^2", "z1", "x1*z1"], ["x1", "z1+x1^2", "0"]),
]

SETTHEORETIC_CASES = [
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1+(t-2)^2", "t-2+x1^2"]),
    ((0, 1, 0, "t"), ["x1", "t-2"], ["x1", "t-2"]),
    ((0, 1, 0, "t^2+1"), ["x1", "t-2"], ["x1", "t-2"]),
    ((0, 1, 1, "t"), ["x1", "y1-2"], ["x1+(y1-2)^2", "y1-2+x1^2"]),
    ((0, 1, 0, "t"), ["x1-1", "t-3"], ["x1-1+(t-3)^2", "t-3"]),
    ((0, 0, 1, "t"), ["y1-2", "t-2"], ["y1-2+(t-2)^2", "t-2"]),
    ((0, 2, 0, "t"), ["x1", "x2", "t-2"], ["x1+(t-2)^2", "x2+x1^2", "t-2+x1*x2"]),
    ((0, 2, 0, "t"), ["x1", "x2", "t-2"], ["x1", "x2", "t-2"]),
    ((0, 2, 0, "t"), ["x1", "x2-1", "t-2"], ["x1+(x2-1)^2", "x2-1", "t-2+x1^2"]),
    ((0, 1, 1, "t"), ["x1", "y1-2", "t-2"], ["x1+(y1-2)^2", "y1-2+x1*(t-2)", "t-2"]),
    ((0, 2, 0, "t-2"), ["x1", "x2"], ["x1+x2^2", "x2"]),
    ((1, 1, 0, "t"), ["x1", "z1"], ["x1+z1^2", "z1"]),
]
