"""Shipped example corpora and the job list run by ``qdesing corpus``."""
from __future__ import annotations

QQ_SPEC = "QQ"
QT = {"params": ["t"]}
QS = {"params": ["s"], "prime": ["s^2 - 2"]}

# (name, field, vars, gens); n <= 3, generator degree <= 5
IDEALS = [
    ("staircase", QQ_SPEC, ["x", "y"], ["x^2", "x*y"]),
    ("cusp", QQ_SPEC, ["x", "y"], ["y^2 - x^3"]),
    ("parabola", QQ_SPEC, ["x", "y"], ["y - x^2"]),
    ("a2", QQ_SPEC, ["x", "y"], ["x^2 + y^3"]),
    ("a4", QQ_SPEC, ["x", "y"], ["x^2 + y^5"]),
    ("cross", QQ_SPEC, ["x", "y"], ["x*y"]),
    ("monomial", QQ_SPEC, ["x", "y"], ["x^2*y^3"]),
    ("node", QQ_SPEC, ["x", "y"], ["y^2 - x^2 - x^3"]),
    ("fermat", QQ_SPEC, ["x", "y", "z"], ["x^3 + y^3 + z^3"]),
    ("axes", QQ_SPEC, ["x", "y", "z"], ["x*y", "y*z", "x*z"]),
    ("cone", QQ_SPEC, ["x", "y", "z"], ["x^2 + y^2 - z^2"]),
    ("umbrella", QQ_SPEC, ["x", "y", "z"], ["y^2 - x*z^2"]),
    ("quartic", QQ_SPEC, ["x", "y"], ["x^4 + y^4"]),
    ("e8", QQ_SPEC, ["x", "y"], ["y^3 - x^5"]),
    ("whitney", QQ_SPEC, ["x", "y", "z"], ["x^2 - y^2*z"]),
    ("planes", QQ_SPEC, ["x", "y", "z"], ["x*y*z"]),
    ("fat-point", QQ_SPEC, ["x", "y"], ["x^2", "y^2"]),
    ("mixed", QQ_SPEC, ["x", "y"], ["x^3", "x*y", "y^4"]),
    ("curvilinear", QQ_SPEC, ["x", "y"], ["x + y^2", "x*y"]),
    ("plane-line", QQ_SPEC, ["x", "y", "z"], ["z*x", "z*y"]),
    ("tacnode-tail", QQ_SPEC, ["x", "y"], ["y^2 - x^4 - x^5"]),
    ("d5", QQ_SPEC, ["x", "y"], ["x^2*y + y^4"]),
    ("unit", QQ_SPEC, ["x", "y"], ["1"]),
    ("twisted", QQ_SPEC, ["x", "y", "z"], ["y - x^2", "z - x^3"]),
    ("cusp-t", QT, ["v", "y"], ["y^2 - t*v^3"]),
    ("line-t", QT, ["x", "y"], ["y - t/(t+1)*x"]),
    ("a2-t", QT, ["x", "y"], ["x^2 + t*y^3"]),
    ("d4-t", QT, ["x", "y"], ["t*x*y + y^3"]),
    ("whitney-t", QT, ["x", "y", "z"], ["x^2 - t*y^2*z"]),
    ("node-t", QT, ["x", "y"], ["y^2 - t*x^2 - x^3"]),
    ("line-s", QS, ["x", "y"], ["y - s*x"]),
    ("pair-s", QS, ["x", "y"], ["x^2 - 2*y^2"]),
    ("cusp-s", QS, ["x", "y"], ["y^2 - s*x^3"]),
    ("surface-s", QS, ["x", "y", "z"], ["x^2 + s*y^2 + z^3"]),
    ("a2-s", QS, ["x", "y"], ["(x - s*y)^2 + y^3"]),
]

# (name, field, vars, gens, d, E); maximal order
MARKED = [
    ("a2", QQ_SPEC, ["x", "y"], ["x^2 + y^3"], 2, []),
    ("cusp", QQ_SPEC, ["x", "y"], ["y^2 - x^3"], 2, []),
    ("a4", QQ_SPEC, ["x", "y"], ["x^2 + y^5"], 2, []),
    ("cross", QQ_SPEC, ["x", "y"], ["x*y"], 2, []),
    ("hyperplane", QQ_SPEC, ["x", "y"], ["x"], 1, []),
    ("double-line", QQ_SPEC, ["x", "y"], ["x^2"], 2, []),
    ("curved-double", QQ_SPEC, ["x", "y"], ["(x + y^2)^2"], 2, []),
    ("e6", QQ_SPEC, ["x", "y"], ["x^3 + y^4"], 3, []),
    ("node", QQ_SPEC, ["x", "y"], ["y^2 - x^2 - x^3"], 2, []),
    ("a2-E", QQ_SPEC, ["x", "y"], ["x^2 + y^3"], 2, ["y"]),
    ("surface-a2", QQ_SPEC, ["x", "y", "z"], ["x^2 + y^2 + z^3"], 2, []),
    ("umbrella", QQ_SPEC, ["x", "y", "z"], ["y^2 - x*z^2"], 2, []),
    ("cusp-t", QT, ["v", "y"], ["y^2 - t*v^3"], 2, []),
    ("a2-t", QT, ["x", "y"], ["x^2 + t*y^3"], 2, []),
    ("cusp-s", QS, ["x", "y"], ["y^2 - s*x^3"], 2, []),
]

# extra marked ideals for test-sequence enumeration (not maximal order)
SEQUENCE_EXTRA = [
    ("monomial-5", QQ_SPEC, ["x", "y"], ["x^2*y^3"], 5, []),
    ("monomial-2", QQ_SPEC, ["x", "y"], ["x^2*y^3"], 2, ["x", "y"]),
    ("whitney-2", QQ_SPEC, ["x", "y", "z"], ["x^2 - y^2*z"], 2, []),
]

# (name, field, vars, gens, points for order invariance)
DESCENT = [
    ("cusp-t", QT, ["v", "y"], ["y^2 - t*v^3"], [[0, 0], [1, 0]]),
    ("line-t", QT, ["x", "y"], ["y - t/(t+1)*x"], [[0, 0]]),
    ("a2-t", QT, ["x", "y"], ["x^2 + t*y^3"], [[0, 0]]),
    ("unit-scaled-t", QT, ["v", "y"], ["t*v"], [[0, 0], [0, 1]]),
    ("umbrella-t", QT, ["v", "y"], ["y^2 - t*v^2"], [[0, 0]]),
    ("node-t", QT, ["x", "y"], ["y^2 - t*x^2 - x^3"], [[0, 0]]),
    ("whitney-t", QT, ["x", "y", "z"], ["x^2 - t*y^2*z"], [[0, 0, 0], [0, 0, 1]]),
    ("two-gens-t", QT, ["x", "y"], ["x^2 - t*y", "t^2*x*y + y^2"], [[0, 0]]),
    ("line-s", QS, ["x", "y"], ["y - s*x"], [[0, 0]]),
    ("cusp-s", QS, ["x", "y"], ["y^2 - s*x^3"], [[0, 0]]),
    ("unit", QT, ["x", "y"], ["1 + t*x"], [[0, 0]]),
    ("rational", QQ_SPEC, ["x", "y"], ["y^2 - 2*x"], [[0, 0]]),
]

# descent examples for the Hilbert-Samuel shift check: (name, field, vars, gens)
HS_SHIFT = [
    ("cusp", QT, ["v", "y"], ["y^2 - t*v^3"]),
    ("umbrella", QT, ["v", "y"], ["y^2 - t*v^2"]),
    ("a2", QT, ["x", "y"], ["x^2 + t*y^3"]),
]

# driver corpus: (name, vars, gens, d)
DRIVER = [
    ("a2", ["x", "y"], ["x^2 + y^3"], 2),
    ("a4", ["x", "y"], ["x^2 + y^5"], 2),
    ("a6", ["x", "y"], ["x^2 + y^7"], 2),
    ("a8", ["x", "y"], ["x^2 + y^9"], 2),
    ("cusp", ["x", "y"], ["y^2 - x^3"], 2),
    ("cross", ["x", "y"], ["x*y"], 2),
    ("curved-double", ["x", "y"], ["(x + y^2)^2"], 2),
    ("node", ["x", "y"], ["y^2 - x^2 - x^3"], 2),
    ("surface-a2", ["x", "y", "z"], ["x^2 + y^2 + z^3"], 2),
]

# generic-fibre driver corpus: (name, symbols, vars, Z-gens, d, step cap)
FIBRE = [
    ("double-line", ["x1"], ["y"], ["y^2"], 2, 32),
    ("cusp-in-T", ["x1"], ["y"], ["y^2 - x1^3"], 2, 32),
    ("tangent-branches", ["x1"], ["y"], ["y*(y - x1^2)"], 2, 32),
    ("cusp-family", ["x1"], ["v", "y"], ["y^2 - x1*v^3"], 2, 32),
    ("moving-contact", ["x1"], ["x", "y"], ["(y - x1*x)^2 + x^3"], 2, 32),
    ("square-family", ["x1"], ["x", "y"], ["y^2 - x1^2*x^3"], 2, 32),
    ("point-base", [], ["x", "y"], ["y^2 - x^3"], 2, 32),
    ("two-parameter", ["x1", "x2"], ["v", "y"], ["y^2 - x1*x2*v^3"], 2, 64),
]

# Bennett examples: (name, vars, gens, center vars)
BENNETT = [
    ("cusp", ["x", "y"], ["y^2 - x^3"], ["x", "y"]),
    ("parabola", ["x", "y"], ["y - x^2"], ["x", "y"]),
    ("umbrella", ["x1", "v", "y"], ["y^2 - x1*v^2"], ["v", "y"]),
    ("cone", ["x", "y", "z"], ["x^2 + y^2 - z^2"], ["x", "y", "z"]),
    ("a4", ["x", "y"], ["y^2 - x^5"], ["x", "y"]),
    ("tacnode", ["x", "y"], ["y^2 - x^4"], ["x", "y"]),
]


def marked_json(field, vars, gens, d, E=()):
    return {"field": field, "vars": list(vars), "gens": list(gens), "d": d, "E": list(E)}


def shipped_jobs() -> list[dict]:
    """Job list exercising every subcommand; each job carries its expected values."""
    jobs = [
        {"command": "diagram", "input": {"field": "QQ", "vars": ["x", "y"], "gens": ["x^2", "x*y"]},
         "options": {"kmax": 6}, "expect": {"vertices": [[1, 1], [2, 0]], "H": [1, 3, 4, 5, 6, 7, 8]}},
        {"command": "diagram", "input": {"field": "QQ", "vars": ["x", "y"], "gens": ["y^2 - x^3"]},
         "options": {"kmax": 5}, "expect": {"vertices": [[0, 2]], "stable": True}},
        {"command": "hs", "input": {"field": "QQ", "vars": ["x", "y"], "gens": ["y^2 - x^3"], "point": [0, 0]},
         "options": {"kmax": 5}, "expect": {"values": [1, 3, 5, 7, 9, 11], "embeddingDimension": 2}},
        {"command": "hs", "input": {"field": "QQ", "vars": ["x", "y"], "gens": ["y^2 - x^3"],
                                    "prime": ["y^2 - x^3"]},
         "options": {"kmax": 4}, "expect": {"values": [1, 2, 3, 4, 5]}},
        {"command": "blowup", "input": dict(marked_json("QQ", ["x", "y"], ["x^2 + y^3"], 2),
                                            center={"vars": ["x", "y"]}),
         "expect": {"charts": 2}},
        {"command": "coeff", "input": marked_json("QQ", ["x", "y"], ["x^2 + y^3"], 2),
         "expect": {"d": 2, "gens": ["x^2", "y^3", "x*y^2"]}},
        {"command": "descend", "input": {"field": QT, "vars": ["v", "y"], "gens": ["y^2 - t*v^3"]},
         "expect": {"roundTrip": True, "prime": []}},
        {"command": "descend", "input": {"field": QS, "vars": ["x", "y"], "gens": ["y - s*x"]},
         "expect": {"roundTrip": True, "prime": ["x1^2 - 2"]}},
    ]
    for k in range(1, 5):
        jobs.append({"command": "resolve",
                     "input": marked_json("QQ", ["x", "y"], [f"x^2 + y^{2 * k + 1}"], 2),
                     "expect": {"blowups": k, "terminal": True}})
    for name, vars, gens, d in DRIVER[:5]:
        for k in (1, 2):
            jobs.append({"command": "check product-line", "input": dict(marked_json("QQ", vars, gens, d), k=k),
                         "expect": {"verdict": "pass"}})
    for name, symbols, vars, gens, d, cap in FIBRE:
        jobs.append({"command": "check generic-fibre",
                     "input": {"symbols": symbols, "vars": vars, "gens": gens, "d": d},
                     "options": {"step_cap": cap}, "expect": {"verdict": "pass"}})
    for name, vars, gens, center in BENNETT:
        jobs.append({"command": "check bennett",
                     "input": {"field": "QQ", "vars": vars, "gens": gens, "center": {"vars": center}},
                     "expect": {"verdict": "pass"}})
    for name, field, vars, gens, d, E in MARKED[:6]:
        jobs.append({"command": "check equivalence",
                     "input": dict(marked_json(field, vars, gens, d, E), coefficient=True),
                     "options": {"depth": 2}, "expect": {"verdict": "equivalent-to-depth"}})
    for name, field, vars, gens, points in DESCENT[:6]:
        jobs.append({"command": "check order-invariance",
                     "input": {"field": field, "vars": vars, "gens": gens, "points": points},
                     "expect": {"verdict": "pass"}})
    return jobs
