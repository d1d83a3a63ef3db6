"""Regenerate the shipped catalog files in src/closedbch/catalog/.

Each positive root vector is paired with its transpose and rescaled so that
[E^a, E^-a] = H^a with [H^a, E^a] = 2 E^a.
"""

import json
from pathlib import Path

import numpy as np

from closedbch.algebra import _encode_matrix, algebra_from_json

OUT = Path(__file__).resolve().parents[1] / "src" / "closedbch" / "catalog"


def unit(d, i, j):
    m = np.zeros((d, d))
    m[i, j] = 1.0
    return m


def comm(a, b):
    return a @ b - b @ a


def normalize(e):
    """Return (e, f, h) with [e, f] = h and [h, e] = 2 e."""
    f = e.T.copy()
    h = comm(e, f)
    c = np.vdot(e.ravel(), comm(h, e).ravel()) / np.vdot(e.ravel(), e.ravel())
    return e, 2 * f / c, 2 * h / c


def assemble(name, positive, simple_names):
    """positive: list of (suffix, root coords, matrix) for every positive root."""
    gens = []
    steps = []
    for suffix, root, mat in positive:
        e, f, h = normalize(mat)
        steps.append((suffix, root, e, f, h))
    for (suffix, root, e, f, h) in steps:
        if sum(root) == 1:
            gens.append({"name": simple_names[root.index(1)], "kind": "cartan", "root": list(root), "matrix": h})
    gens.sort(key=lambda g: g["root"].index(1))
    for (suffix, root, e, f, h) in steps:
        gens.append({"name": f"E+{suffix}", "kind": "step", "root": list(root), "matrix": e})
        gens.append({"name": f"E-{suffix}", "kind": "step", "root": [-r for r in root], "matrix": f})
    for g in gens:
        g["matrix"] = _encode_matrix(g["matrix"])
    obj = {"name": name, "generators": gens}
    algebra_from_json(obj)
    (OUT / f"{name}.json").write_text(json.dumps(obj, indent=1) + "\n")


def main():
    assemble("sl2", [("", (1,), unit(2, 0, 1))], ["H"])
    # the single sl2 root has an empty suffix: E+ / E-
    assemble(
        "sl3",
        [
            ("1", (1, 0), unit(3, 0, 1)),
            ("2", (0, 1), unit(3, 1, 2)),
            ("theta", (1, 1), unit(3, 0, 2)),
        ],
        ["H1", "H2"],
    )
    # so5 realized through its 4-dimensional spinor representation (sp4 matrices
    # preserving J = [[0, 1], [-1, 0]]); root 1 is long, root 2 is short.
    assemble(
        "so5",
        [
            ("1", (1, 0), unit(4, 1, 3)),
            ("2", (0, 1), unit(4, 0, 1) - unit(4, 3, 2)),
            ("12", (1, 1), unit(4, 0, 3) + unit(4, 1, 2)),
            ("122", (1, 2), unit(4, 0, 2)),
        ],
        ["H1", "H2"],
    )


if __name__ == "__main__":
    main()
