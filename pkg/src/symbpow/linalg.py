"""Exact linear algebra over the rationals.

Everything ideal-theoretic in this package reduces to three questions about
matrices with rational entries: what is the rank, what is the kernel, and is
a vector inside the span of others.  All three are answered here with exact
arithmetic; no floating point is used anywhere.

Two independent elimination engines produce identical answers:

* :func:`rref` - textbook Gaussian elimination on ``fractions.Fraction``
  entries, pivoting on the first nonzero entry scanning left-to-right,
  top-to-bottom.
* :func:`rref_fraction_free` - division-free integer elimination
  (cross-multiplication with per-row gcd content removal, a Bareiss-flavored
  scheme) on the integer matrix obtained by clearing denominators row-wise.

Since the reduced row echelon form of a row space is unique, the two engines
must agree entry-for-entry; the test suite and the ``selftest`` command
exercise that agreement.  A third, optional engine recomputes ranks modulo
word-sized primes (vectorized via numpy) and is used only to cross-check the
exact results, never to produce them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, EngineDisagreementError

Rat = Fraction

# Primes below 2**31 so that numpy int64 holds products without overflow.
MODULAR_PRIMES = (2147483647, 2147483629, 2147483587)


def _strip_content(row: list[int]) -> list[int]:
    """Divide an integer row by the gcd of its entries (content)."""
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    return [v // g for v in row] if g > 1 else row


def _primitive(row: Sequence[int]) -> tuple[int, ...]:
    """Content-stripped copy with positive leading entry; canonical up to nothing."""
    out = _strip_content(list(row))
    for v in out:
        if v:
            if v < 0:
                out = [-x for x in out]
            break
    return tuple(out)


def clear_denominators(row: Sequence[Rat | int]) -> list[int]:
    """Scale one row by the lcm of its denominators to integer entries."""
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) if isinstance(v, Fraction) else v * den for v in row]


class RatMatrix:
    """Dense immutable matrix of exact rationals, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[Rat | int]], cols: int | None = None):
        rows = tuple(tuple(Fraction(v) for v in r) for r in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatchError("rows of unequal length")
        else:
            width = 0 if cols is None else cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, *a):  # immutability: safe to share across threads
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def row(self, i: int) -> tuple[Rat, ...]:
        return self.data[i]

    def entry(self, i: int, j: int) -> Rat:
        return self.data[i][j]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.data for v in r)

    def int_rows(self) -> list[list[int]]:
        """Rows scaled to integers (denominators cleared row-wise)."""
        return [clear_denominators(r) for r in self.data]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.data == other.data and self.cols == other.cols

    def __hash__(self):
        return hash((self.cols, self.data))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class RrefResult:
    """Canonical reduced row echelon form with its pivot columns."""

    matrix: RatMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _as_matrix(m: RatMatrix | Iterable) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m)


def rref(m: RatMatrix | Iterable) -> RrefResult:
    """Reduced row echelon form by plain rational Gaussian elimination.

    The pivot is the first nonzero entry found scanning columns left to
    right and rows top to bottom, so the run is deterministic; the output
    is the canonical RREF of the row space.
    """
    m = _as_matrix(m)
    work = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = 1 / work[r][c]
        work[r] = [v * inv for v in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                row = work[i]
                work[i] = [a - f * b for a, b in zip(row, work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = RatMatrix(work[:r], cols=ncols)
    return RrefResult(reduced, tuple(pivots))


class IntSpan:
    """Row space of integer vectors, kept as an echelon set of primitive rows.

    Rows are keyed by leading column.  An incoming vector is reduced
    fraction-free (cross-multiplication, then content removal); a nonzero
    residual joins the echelon at its leading column.  Because the set of
    leading columns of any echelon basis of a fixed subspace is an invariant
    of that subspace, rank, pivot columns and membership answers do not
    depend on insertion order.
    """

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}

    def _residual(self, vec: Sequence[int]) -> tuple[int | None, list[int]]:
        v = _strip_content([int(x) for x in vec])
        rows = self.rows
        n = self.ncols
        lead = 0
        while lead < n:
            c = v[lead]
            if c:
                r = rows.get(lead)
                if r is None:
                    return lead, v
                p = r[lead]
                v = [p * a - c * b for a, b in zip(v, r)]
                v = _strip_content(v)
            lead += 1
        return None, v

    def insert(self, vec: Sequence[int]) -> bool:
        """Add a vector; returns True when it enlarged the span."""
        if len(vec) != self.ncols:
            raise DimensionMismatchError(
                f"vector of length {len(vec)} inserted into span of width {self.ncols}"
            )
        lead, v = self._residual(vec)
        if lead is None:
            return False
        if v[lead] < 0:
            v = [-x for x in v]
        self.rows[lead] = v
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ncols:
            raise DimensionMismatchError(
                f"vector of length {len(vec)} tested against span of width {self.ncols}"
            )
        lead, _ = self._residual(vec)
        return lead is None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def basis(self) -> list[list[int]]:
        """Echelon rows in pivot order (primitive, positive leading entry)."""
        return [self.rows[c] for c in sorted(self.rows)]


def span_of(rows: Iterable[Sequence[int]], ncols: int) -> IntSpan:
    s = IntSpan(ncols)
    for r in rows:
        s.insert(r)
    return s


def _canonical_rref_from_echelon(span: IntSpan, ncols: int) -> RrefResult:
    """Back-eliminate an integer echelon fraction-free, then normalize pivots to 1."""
    piv = list(span.pivots())
    rows = [list(span.rows[c]) for c in piv]
    for i in range(len(piv) - 1, -1, -1):
        pc = piv[i]
        below = rows[i]
        p = below[pc]
        for j in range(i):
            c = rows[j][pc]
            if c:
                rows[j] = _strip_content([p * a - c * b for a, b in zip(rows[j], below)])
    out = []
    for i, pc in enumerate(piv):
        inv = Fraction(1, rows[i][pc])
        out.append([v * inv for v in rows[i]])
    return RrefResult(RatMatrix(out, cols=ncols), tuple(piv))


def rref_fraction_free(m: RatMatrix | Iterable) -> RrefResult:
    """Reduced row echelon form via division-free integer elimination.

    Rational input is scaled to integers row by row (row scaling leaves the
    row space, hence the RREF, unchanged).  Intermediate growth is bounded
    by removing the gcd content of every working row.  The result is the
    same canonical RREF that :func:`rref` produces.
    """
    m = _as_matrix(m)
    span = IntSpan(m.cols)
    for r in m.data:
        span.insert(clear_denominators(r))
    return _canonical_rref_from_echelon(span, m.cols)


def kernel_of_int_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Kernel basis of an integer matrix, as primitive integer vectors.

    One basis vector per free column, ordered by free column; each is scaled
    to a primitive integer vector with positive leading entry, so the basis
    is canonical.  An empty matrix has the standard basis as kernel.
    """
    span = span_of(rows, ncols)
    piv = list(span.pivots())
    pivset = set(piv)
    ech = [span.rows[c] for c in piv]
    basis: list[tuple[int, ...]] = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        # Solve the triangular system U v = 0 with v[fc] = 1, other free = 0.
        entries: dict[int, Fraction] = {fc: Fraction(1)}
        for i in range(len(piv) - 1, -1, -1):
            row = ech[i]
            acc = Fraction(0)
            for c, val in entries.items():
                rc = row[c]
                if rc:
                    acc += rc * val
            if acc:
                entries[piv[i]] = -acc / row[piv[i]]
        den = 1
        for val in entries.values():
            den = den * val.denominator // gcd(den, val.denominator)
        full = [0] * ncols
        for c, val in entries.items():
            full[c] = int(val * den)
        basis.append(_primitive(full))
    return basis


def kernel_basis(m: RatMatrix | Iterable, engine: str = "fraction-free") -> list[tuple[Rat, ...]]:
    """Basis of the right kernel of ``m`` (vectors ``v`` with ``M v = 0``).

    Returned vectors are linearly independent and number exactly
    ``cols - rank``.  Entries are integers embedded in the rationals
    (each vector is primitive-scaled).
    """
    m = _as_matrix(m)
    if engine == "naive":
        res = rref(m)
        pivset = set(res.pivots)
        basis = []
        for fc in range(m.cols):
            if fc in pivset:
                continue
            v = [Fraction(0)] * m.cols
            v[fc] = Fraction(1)
            for i, pc in enumerate(res.pivots):
                v[pc] = -res.matrix.data[i][fc]
            basis.append(tuple(Fraction(x) for x in _primitive(clear_denominators(v))))
        return basis
    if engine != "fraction-free":
        raise ValueError(f"unknown engine {engine!r}")
    rows = [clear_denominators(r) for r in m.data]
    return [tuple(Fraction(x) for x in v) for v in kernel_of_int_rows(rows, m.cols)]


def in_span(vec: Sequence[Rat | int], vectors: Sequence[Sequence[Rat | int]]) -> bool:
    """True iff ``vec`` is an exact rational combination of ``vectors``.

    Decided as rank(S) == rank(S + [v]), computed on one shared echelon.
    Scaling ``vec`` or any element of ``vectors`` by a nonzero rational
    does not change the answer.
    """
    n = len(vec)
    for s in vectors:
        if len(s) != n:
            raise DimensionMismatchError(
                f"span vector of length {len(s)} does not match query of length {n}"
            )
    span = span_of((clear_denominators(s) for s in vectors), n)
    return span.contains(clear_denominators(vec))


# ---------------------------------------------------------------------------
# Independent engines used only for cross-validation.


def naive_rank_pivots(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, tuple[int, ...]]:
    """Rank and pivot columns by forward rational Gaussian elimination.

    Same arithmetic as :func:`rref` (per-entry ``Fraction`` row operations)
    but forward-only and free to pick the shortest pivot in a column, which
    keeps the entries small on the large condition matrices.  Rank and pivot
    columns are invariants of the row space, so the answers must equal the
    fraction-free engine's.
    """
    work = [[Fraction(v) for v in _strip_content(list(r))] for r in rows]
    nrows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        cands = [i for i in range(r, nrows) if work[i][c]]
        if not cands:
            continue
        best = min(
            cands,
            key=lambda i: work[i][c].numerator.bit_length() + work[i][c].denominator.bit_length(),
        )
        work[r], work[best] = work[best], work[r]
        lead = work[r][c]
        for i in range(r + 1, nrows):
            if work[i][c]:
                f = work[i][c] / lead
                row = work[i]
                work[i] = [a - f * b for a, b in zip(row, work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return len(pivots), tuple(pivots)


def modular_rank_pivots(rows: Sequence[Sequence[int]], ncols: int, prime: int) -> tuple[int, tuple[int, ...]]:
    """Rank and pivot columns of an integer matrix modulo ``prime``.

    Vectorized elimination over numpy int64; primes are below 2**31 so all
    intermediate products fit.  The modular rank never exceeds the rational
    rank, and for all but finitely many primes they coincide.
    """
    import numpy as np

    if not rows:
        return 0, ()
    a = np.array([[v % prime for v in r] for r in rows], dtype=np.int64)
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), prime - 2, prime)
        a[r] = (a[r] * inv) % prime
        rest = np.nonzero(a[r + 1:, c])[0]
        for i in rest:
            i = r + 1 + int(i)
            a[i] = (a[i] - a[i, c] * a[r]) % prime
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return len(pivots), tuple(pivots)


def validate_modular(rows: Sequence[Sequence[int]], ncols: int, exact_rank: int,
                     exact_pivots: tuple[int, ...], primes: Sequence[int] = MODULAR_PRIMES) -> None:
    """Check the exact rank/pivots of an integer matrix against modular runs.

    A modular rank above the exact rank, or a pivot mismatch at a prime that
    attains the exact rank, indicates a bug in one of the engines; a prime
    may fall short of the exact rank only by dividing a pivot minor, so at
    least one prime must attain it.  Raises :class:`EngineDisagreementError`.
    """
    attained = False
    for p in primes:
        rk, piv = modular_rank_pivots(rows, ncols, p)
        if rk > exact_rank:
            raise EngineDisagreementError(
                f"modular rank {rk} (mod {p}) exceeds exact rank {exact_rank}"
            )
        if rk == exact_rank:
            attained = True
            if piv != exact_pivots:
                raise EngineDisagreementError(
                    f"pivot columns differ mod {p}: {piv} vs exact {exact_pivots}"
                )
    if not attained:
        raise EngineDisagreementError(
            f"no prime in {tuple(primes)} attained the exact rank {exact_rank}"
        )


class MatrixRecorder:
    """Collects the integer matrices whose answers the pipeline consumed.

    The engine cross-validation suite replays every recorded matrix through
    the independent engines and compares rank, pivot columns and recorded
    span-membership answers.  Deduplicates by content; ``record`` returns a
    handle that membership answers can be attached to.
    """

    def __init__(self):
        self.matrices: list[dict] = []
        self._seen: dict = {}

    def record(self, kind: str, rows: Sequence[Sequence[int]], ncols: int, **meta) -> dict:
        key = (ncols, tuple(tuple(r) for r in rows))
        entry = self._seen.get(key)
        if entry is None:
            entry = {"kind": kind, "rows": [list(r) for r in rows],
                     "ncols": ncols, "meta": meta, "memberships": []}
            self._seen[key] = entry
            self.matrices.append(entry)
        return entry

    @staticmethod
    def record_membership(handle: dict | None, query: Sequence[int], answer: bool) -> None:
        if handle is not None:
            handle["memberships"].append({"query": list(query), "answer": answer})

    def summary(self) -> list[dict]:
        return [{"kind": m["kind"], "shape": (len(m["rows"]), m["ncols"]),
                 "memberships": len(m["memberships"]), **m["meta"]}
                for m in self.matrices]
