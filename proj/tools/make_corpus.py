"""Regenerates the JSON corpus shipped in corpus/ (expanded with sympy)."""

import json
import os
import sys

import sympy as sp

x, y, z = sp.symbols("x y z", positive=True)


def system(polys, variables):
    out = []
    for p in polys:
        terms = [{"c": float(c), "a": [float(e) for e in m]} for m, c in laurent_terms(p, variables)]
        terms.sort(key=lambda t: t["a"])
        out.append(terms)
    return {"n": len(variables), "polys": out}


def laurent_terms(p, variables):
    """(exponent, coefficient) pairs of an expanded Laurent polynomial."""
    collected = {}
    for term in sp.Add.make_args(sp.expand(p)):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        monom = tuple(int(powers.get(v, 0)) for v in variables)
        collected[monom] = collected.get(monom, 0) + coeff
    return [(m, c) for m, c in collected.items() if c != 0]


def raw(polys, n):
    return {"n": n, "polys": [[{"c": c, "a": a} for c, a in p] for p in polys]}


def main(out_dir):
    entries = []
    entries.append({
        "name": "haas",
        "claim": "a pair of trinomials with five positive roots",
        "pipeline": "count",
        "system": raw([[(1, [108, 0]), (1.1, [0, 54]), (-1.1, [0, 1])],
                       [(1, [0, 108]), (1.1, [54, 0]), (-1.1, [1, 0])]], 2),
        "expect": {"count": 5, "max_residual": 1e-8},
    })
    entries.append({
        "name": "li-wang",
        "claim": "a trinomial and a tetranomial with exactly three positive roots",
        "pipeline": "count",
        "system": raw([[(1, [0, 1]), (-1, [1, 0]), (-1, [0, 0])],
                       [(1, [0, 3]), (0.01, [3, 3]), (-9, [3, 0]), (-2, [0, 0])]], 2),
        "expect": {"count": 3, "max_residual": 1e-8},
    })
    entries.append({
        "name": "sturmfels-unit-coefficients",
        "claim": "the type (4,4) family with all positive coefficients 1 has at most three positive roots",
        "pipeline": "count",
        "system": raw([[(-1, [5, 0]), (1, [0, 5]), (1, [3, 5]), (1, [6, 8])],
                       [(-1, [0, 5]), (1, [5, 0]), (1, [5, 3]), (1, [8, 6])]], 2),
        "expect": {"count_max": 3},
    })
    entries.append({
        "name": "triangle-class",
        "claim": "circle and line: roots (3,4) and (4,3)",
        "pipeline": "count",
        "system": system([x**2 + y**2 - 25, x + y - 7], [x, y]),
        "expect": {"count": 2, "roots": [[3, 4], [4, 3]], "tol": 1e-8},
    })
    entries.append({
        "name": "quadrilateral-class",
        "claim": "two quadratics in separate variables: the grid {1,2}^2",
        "pipeline": "count",
        "system": system([x**2 - 3 * x + 2, y**2 - 3 * y + 2], [x, y]),
        "expect": {"count": 4, "roots": [[1, 1], [1, 2], [2, 1], [2, 2]], "tol": 1e-8},
    })
    s5, s3 = sp.sqrt(5), sp.sqrt(3)
    pent_roots = [[(3 - s5) / 2, 3], [(3 + s5) / 2, 3], [2 - s3, 4], [2 + s3, 4]]
    entries.append({
        "name": "pentagon-class",
        "claim": "pentagonal Newton polygon: four irrational roots",
        "pipeline": "count",
        "system": system([y**2 - 7 * y + 12, -1 + x * y - x**2], [x, y]),
        "expect": {"count": 4, "roots": [[float(sp.N(v, 20)) for v in r] for r in pent_roots], "tol": 1e-8},
    })
    q = 1
    for i in range(1, 6):
        q *= (x - i) ** 2
    r = 1
    for i in range(1, 6):
        r *= (y - i) ** 2
    entries.append({
        "name": "eq-degen",
        "claim": "trivariate system of type (2,2,21) vanishing at the 25 points (i, j, 1)",
        "pipeline": "evaluate",
        "system": system([x * (z - 1), y * (z - 1), q + r], [x, y, z]),
        "expect": {"points": [[i, j, 1] for i in range(1, 6) for j in range(1, 6)], "max_residual": 1e-10},
    })
    entries.append({
        "name": "five-root-univariate",
        "claim": "1 - 1.12 t^0.5 (1-t)^0.02 - 0.71 t^-0.05 (1-t)^1.8 has exactly five roots in (0,1)",
        "pipeline": "univariate",
        "canonical": {"A": 1.12, "B": 0.71, "a": 0.5, "b": 0.02, "c": -0.05, "d": 1.8},
        "expect": {"count": 5, "roots": [0.00396494, 0.04354707, 0.36799737, 0.72522344, 0.99620026], "tol": 1e-5},
    })
    for d in range(1, 6):
        f = 1
        for i in range(1, d + 1):
            f *= y - i * x
        entries.append({
            "name": f"lines-through-origin-{d}",
            "claim": f"product of {d} lines y = i x: {d} non-compact components",
            "pipeline": "components",
            "system": system([f], [x, y]),
            "expect": {"compact": 0, "non_compact": d},
        })
    perrucci = (1 - x - x * y - 1 / y) * (1 - y - x * y - 1 / x) * (1 - 1 / x - 1 / y)
    entries.append({
        "name": "three-factor-curve",
        "claim": "product of three trinomial curves with three components",
        "pipeline": "components",
        "system": system([perrucci], [x, y]),
        "expect": {"total": 3},
    })
    entries.append({
        "name": "empty-positive-zero-set",
        "claim": "x^2 + (1 - xy)^2 has no positive zeros",
        "pipeline": "components",
        "system": system([x**2 + (1 - x * y) ** 2], [x, y]),
        "expect": {"compact": 0, "non_compact": 0},
    })
    os.makedirs(out_dir, exist_ok=True)
    for i, e in enumerate(entries):
        with open(os.path.join(out_dir, f"{i:02d}-{e['name']}.json"), "w") as fh:
            json.dump(e, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "corpus"))
