"""Sparse vectors as plain dicts {basis key: scalar}."""
from .scalar import ZERO


def vadd(acc, v, c=1):
    """acc += c*v in place; returns acc."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vsum(pairs):
    """Sum of c*v over (c, v) pairs."""
    acc = {}
    for c, v in pairs:
        vadd(acc, v, c)
    return acc


def vclean(v):
    return {k: x for k, x in v.items() if x}


def vsub(a, b):
    return vadd(dict(a), b, -1)


def veq(a, b):
    return not vsub(a, b)


def vmap_scalars(v, f):
    return vclean({k: f(x) for k, x in v.items()})
