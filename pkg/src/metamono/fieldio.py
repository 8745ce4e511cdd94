"""Delimited field/coefficient files and raw raster output.

Every float is rendered with %.17g so files round-trip through text
without losing bits and repeated runs are byte-identical.
"""

import csv

import numpy as np

from .basis import BasisIndex, DiskPoint, FieldFunction
from .errors import DomainError, FormatError

FMT = "%.17g"

ZEROS_HEADER = ("n", "m", "zero")
FIELD_HEADER = ("x", "y", "s", "i", "j", "k")
COEFFS_HEADER = ("n", "m", "s", "i", "j", "k")
GRAM_HEADER = (
    "n1", "m1", "n2", "m2",
    "s", "i", "j", "k",
    "analytic_s", "analytic_i", "analytic_j", "analytic_k",
    "abs_dev",
)

# rows bind to a quadrature node when within this euclidean distance
NODE_TOLERANCE = 1e-9


def fmt(value):
    return FMT % float(value)


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_zeros_csv(path, table, n_max, m_max):
    """Positive Bessel zeros j_{n,m} for n <= n_max, m <= m_max."""
    rows = (
        (str(n), str(m), fmt(table.zero(n, m)))
        for n in range(n_max + 1)
        for m in range(1, m_max + 1)
    )
    _write_rows(path, ZEROS_HEADER, rows)


def write_field_csv(path, x, y, values):
    """Pointwise quaternion samples; ``values`` has shape (..., 4)."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    values = np.asarray(values, dtype=float).reshape(-1, 4)
    if not (x.size == y.size == values.shape[0]):
        raise FormatError("field output arrays disagree in length")
    rows = (
        (fmt(x[r]), fmt(y[r]),
         fmt(values[r, 0]), fmt(values[r, 1]),
         fmt(values[r, 2]), fmt(values[r, 3]))
        for r in range(x.size)
    )
    _write_rows(path, FIELD_HEADER, rows)


def write_coeffs_csv(path, coeffs):
    """Coefficient table keyed by (n, m), ordered by (n, m)."""
    rows = []
    for idx in sorted(BasisIndex(*k) for k in coeffs):
        c = np.asarray(coeffs[idx], dtype=float).reshape(4)
        rows.append((str(idx.n), str(idx.m), fmt(c[0]), fmt(c[1]), fmt(c[2]), fmt(c[3])))
    _write_rows(path, COEFFS_HEADER, rows)


def write_gram_csv(path, report):
    """One row per ordered index pair of a GramReport."""
    rows = []
    for a, ia in enumerate(report.indices):
        for b, ib in enumerate(report.indices):
            q = report.matrix[a, b]
            ref = report.analytic[a, b]
            rows.append(
                (str(ia.n), str(ia.m), str(ib.n), str(ib.m),
                 fmt(q[0]), fmt(q[1]), fmt(q[2]), fmt(q[3]),
                 fmt(ref[0]), fmt(ref[1]), fmt(ref[2]), fmt(ref[3]),
                 fmt(report.deviations[a, b]))
            )
    _write_rows(path, GRAM_HEADER, rows)


def _read_csv(path, header):
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                got = next(reader)
            except StopIteration:
                raise FormatError("%s: empty file" % path)
            if tuple(h.strip() for h in got) != header:
                raise FormatError(
                    "%s: expected header %s, got %s"
                    % (path, ",".join(header), ",".join(got))
                )
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(header):
                    raise FormatError(
                        "%s:%d: expected %d fields, got %d"
                        % (path, lineno, len(header), len(row))
                    )
                try:
                    rows.append([float(v) for v in row])
                except ValueError:
                    raise FormatError("%s:%d: non-numeric field" % (path, lineno))
            return rows
    except OSError as exc:
        raise FormatError("cannot read %s: %s" % (path, exc))


def read_coeffs_csv(path):
    coeffs = {}
    for row in _read_csv(path, COEFFS_HEADER):
        n, m = int(row[0]), int(row[1])
        if n != row[0] or m != row[1]:
            raise FormatError("%s: non-integer index (%g, %g)" % (path, row[0], row[1]))
        coeffs[BasisIndex(n, m)] = np.array(row[2:6])
    if not coeffs:
        raise FormatError("%s: no coefficient rows" % path)
    return coeffs


def read_field_csv(path):
    rows = np.array(_read_csv(path, FIELD_HEADER), dtype=float)
    if rows.size == 0:
        raise FormatError("%s: no data rows" % path)
    return rows[:, 0], rows[:, 1], rows[:, 2:6]


def _node_key(x, y):
    return (round(x / NODE_TOLERANCE), round(y / NODE_TOLERANCE))


class _BoundField:
    """Samples bound to quadrature nodes, looked up by position."""

    def __init__(self, path, rule):
        x, y, vals = read_field_csv(path)
        self._lookup = {}
        for r in range(x.size):
            self._lookup[_node_key(x[r], y[r])] = (x[r], y[r], vals[r])
        self.path = path
        self._check_cover(path, rule.points.x, rule.points.y)

    def _find(self, x, y):
        kx, ky = _node_key(x, y)
        for dx in (0, -1, 1):
            for dy in (0, -1, 1):
                hit = self._lookup.get((kx + dx, ky + dy))
                if hit is not None and np.hypot(hit[0] - x, hit[1] - y) <= NODE_TOLERANCE:
                    return hit[2]
        return None

    def _check_cover(self, path, nx, ny):
        for r in range(nx.size):
            if self._find(nx[r], ny[r]) is None:
                raise FormatError(
                    "%s: no sample within %g of quadrature node (%.17g, %.17g)"
                    % (path, NODE_TOLERANCE, nx[r], ny[r])
                )

    def __call__(self, p):
        x = np.broadcast_to(p.x, p.shape).ravel()
        y = np.broadcast_to(p.y, p.shape).ravel()
        out = np.empty((x.size, 4))
        for r in range(x.size):
            hit = self._find(x[r], y[r])
            if hit is None:
                raise DomainError(
                    "field file %s has no sample at (%.17g, %.17g)"
                    % (self.path, x[r], y[r])
                )
            out[r] = hit
        return out.reshape(p.shape + (4,))


def parse_field_csv(path, rule, lam, label=None):
    """A FieldFunction backed by samples at the nodes of ``rule``.

    Every node of the rule must be matched by a row within
    NODE_TOLERANCE; rows binding to the same node overwrite in file
    order.  Evaluation at any other point raises DomainError.
    """
    bound = _BoundField(path, rule)
    return FieldFunction(fn=bound, lam=lam, label=label or str(path))


def write_pgm(path, values, inside):
    """8-bit binary PGM; min-max scaled over ``inside``, 128 elsewhere."""
    values = np.asarray(values, dtype=float)
    inside = np.broadcast_to(np.asarray(inside, dtype=bool), values.shape)
    if values.ndim != 2:
        raise FormatError("raster output needs a 2-d grid")
    pix = np.full(values.shape, 128, dtype=np.uint8)
    if inside.any():
        sel = values[inside]
        if not np.all(np.isfinite(sel)):
            raise FormatError("raster values must be finite inside the disk")
        lo, hi = float(sel.min()), float(sel.max())
        if hi > lo:
            scaled = np.rint(255.0 * (values - lo) / (hi - lo))
            pix[inside] = np.clip(scaled, 0.0, 255.0).astype(np.uint8)[inside]
        else:
            pix[inside] = 128
    h, w = values.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(pix.tobytes())
