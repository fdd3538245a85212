"""Exact sparse Gaussian elimination over Q, Q(q) or Q(t).

Vectors are dicts {key: scalar}; keys only need to be mutually comparable.
"""
from .scalar import ONE, field_inverse
from .vec import vadd, vscale


class Echelon:
    """Incrementally maintained echelon basis of a span.

    Each stored row has its pivot at its smallest key, with coefficient 1.
    When ``track`` is set, every row remembers how it was combined from the
    inserted vectors, so dependencies come out as explicit kernel vectors.
    """

    def __init__(self, track=False):
        self.rows = {}
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        done = set()
        while True:
            cand = [k for k in vec if k in self.rows and k not in done]
            if not cand:
                return vec, combo
            k = min(cand)
            row, rcombo = self.rows[k]
            c = vec[k]
            vadd(vec, row, -c)
            if combo is not None:
                vadd(combo, rcombo, -c)
            done.add(k)

    def add(self, vec, label=None):
        """Insert vec; returns None if independent, else the kernel relation."""
        combo = {label: ONE} if self.track else None
        r, combo = self.reduce(vec, combo)
        if not r:
            return combo if self.track else {}
        k = min(r)
        inv = field_inverse(r[k])
        self.rows[k] = (vscale(r, inv), vscale(combo, inv) if combo is not None else None)
        return None

    def contains(self, vec):
        return not self.reduce(vec)[0]


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(columns):
    """Relations sum_i c_i columns[i] = 0, one per dependent column (as {index: c})."""
    e = Echelon(track=True)
    out = []
    for i, col in enumerate(columns):
        rel = e.add(col, i)
        if rel is not None:
            out.append(rel)
    return out


def is_independent(vectors):
    return rank(vectors) == len(vectors)
