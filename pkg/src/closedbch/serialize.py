"""Deterministic JSON for reports.

Keys are sorted, floats are printed with 17 significant digits and complex
numbers become ``[re, im]`` pairs, so identical requests give byte-identical
output.
"""

import json
import math
from numbers import Complex, Integral, Real

import numpy as np

from .algebra import LieElement
from .commutators import PairParams, TripleParams, TypeTag, params_to_json, tag_to_json
from .results import AlphaSolution, BCHResult, TildeParams


def _float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if s == "-0":
        s = "0"
    return s


def dumps(obj, indent=None):
    """Serialize plain data (dict/list/str/numbers/complex/None) deterministically."""
    return _dump(obj, indent, 0)


def _dump(obj, indent, level):
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Integral):
        return str(int(obj))
    if isinstance(obj, Real):
        return _float(obj)
    if isinstance(obj, Complex):
        return _dump([obj.real, obj.imag], None, 0)
    if isinstance(obj, np.ndarray):
        return _dump(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        items = [(str(k), v) for k, v in obj.items()]
        items.sort()
        parts = [f"{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in items]
        return _wrap("{", "}", parts, indent, level)
    if isinstance(obj, (list, tuple)):
        parts = [_dump(v, indent, level + 1) for v in obj]
        return _wrap("[", "]", parts, indent, level)
    return _dump(to_plain(obj), indent, level)


def _wrap(open_, close, parts, indent, level):
    if not parts:
        return open_ + close
    if indent is None:
        return open_ + ", ".join(parts) + close
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    return open_ + "\n" + ",\n".join(pad + p for p in parts) + "\n" + end + close


def element_to_json(elem):
    return {"coefficients": dict(elem.coeffs), "central": elem.central}


def alpha_to_json(sol):
    out = {
        "alpha": sol.alpha,
        "beta": sol.beta,
        "branch": sol.branch,
        "weight_residual": sol.weight_residual,
    }
    if sol.quadratic_b is not None:
        out["quadratic_b"] = sol.quadratic_b
        out["x_u"] = sol.x_u
    return out


def result_to_json(res, tol=1e-8):
    out = {
        "method": res.method,
        "w": element_to_json(res.w),
        "oracle_residual": res.oracle_residual,
        "oracle": res.oracle,
        "verified": res.verified(tol) if res.oracle_residual is not None else None,
    }
    if res.alpha_used is not None:
        out["alpha"] = alpha_to_json(res.alpha_used)
    if res.tilde is not None:
        out["tilde"] = {"u": res.tilde.u_t, "v": res.tilde.v_t, "c": res.tilde.c_t}
    if res.params is not None:
        out["params"] = params_to_json(res.params)
    if res.tag is not None:
        out["type"] = tag_to_json(res.tag)
    if res.alternatives:
        out["alternatives"] = [
            {"alpha": alpha_to_json(a), "w": element_to_json(w), "oracle_residual": r} for a, w, r in res.alternatives
        ]
    if res.details:
        out["details"] = {k: to_plain(v) for k, v in res.details.items()}
    return out


def to_plain(obj):
    """Convert library objects into JSON-ready plain data."""
    if isinstance(obj, LieElement):
        return element_to_json(obj)
    if isinstance(obj, BCHResult):
        return result_to_json(obj)
    if isinstance(obj, AlphaSolution):
        return alpha_to_json(obj)
    if isinstance(obj, TildeParams):
        return {"u": obj.u_t, "v": obj.v_t, "c": obj.c_t}
    if isinstance(obj, (PairParams, TripleParams)):
        return params_to_json(obj)
    if isinstance(obj, TypeTag):
        return tag_to_json(obj)
    if isinstance(obj, (bool, str, Complex, np.ndarray, dict, list, tuple)) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")
