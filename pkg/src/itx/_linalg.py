"""Exact incremental Gaussian elimination on sparse vectors."""
from __future__ import annotations


class LinearSpan:
    """Echelon basis of sparse vectors (dicts key -> coefficient).

    Every accepted vector gets an index; ``coordinates`` expresses a vector
    in terms of the accepted ones.  ``key`` orders the dict keys and fixes
    the pivot of each row (its largest key).
    """

    def __init__(self, field, key=None):
        self.field = field
        self.key = key or (lambda k: k)
        self.rows = {}  # pivot -> (row, coords)
        self.count = 0

    def _reduce(self, v):
        v = dict(v)
        coords = {}
        while True:
            cands = [m for m in v if m in self.rows]
            if not cands:
                return v, coords
            m = max(cands, key=self.key)
            c = v[m]
            row, rc = self.rows[m]
            for k, x in row.items():
                w = v.get(k)
                w = -c * x if w is None else w - c * x
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
            for k, x in rc.items():
                w = coords.get(k, self.field.zero) + c * x
                if w:
                    coords[k] = w
                else:
                    coords.pop(k, None)

    def add(self, v):
        """Insert v; returns (index, None) if independent, else (None, coordinates)."""
        r, coords = self._reduce(v)
        if not r:
            return None, coords
        idx = self.count
        self.count += 1
        p = max(r, key=self.key)
        inv = self.field.inv(r[p])
        row = {k: x * inv for k, x in r.items()}
        rc = {k: -x * inv for k, x in coords.items()}
        rc[idx] = inv
        self.rows[p] = (row, rc)
        return idx, None

    def coordinates(self, v):
        """Coefficients a_i with v = sum a_i * accepted_i, or None outside the span."""
        r, coords = self._reduce(v)
        if r:
            return None
        return coords


def first_kernel_vector(vectors, field, key=None):
    """Nonzero lam with sum lam_i v_i = 0 and the smallest possible last index."""
    span = LinearSpan(field, key)
    accepted = []
    for i, v in enumerate(vectors):
        idx, coords = span.add(v)
        if idx is None:
            lam = {accepted[j]: -c for j, c in coords.items()}
            lam[i] = field.one
            return [lam.get(k, field.zero) for k in range(len(vectors))]
        accepted.append(i)
    return None
