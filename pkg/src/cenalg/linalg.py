"""Dense exact matrices and subspace computations.

Matrices are immutable values over a fixed field; all operations are pure
functions, so independent computations can run in parallel freely.  Row
reduction has two specialized backends: a vectorized numpy path for prime
fields (int64 is safe for any p < 2^31 because pivot rows are normalized
before elimination) and a fraction-free integer path for the rationals
(rows are scaled to integers and gcd-reduced, which avoids Fraction
arithmetic in the inner loop).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .fields import Field, FieldError, PrimeField, QQ, RationalField


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class ParseError(ValueError):
    """Malformed matrix (or similar) text input."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + where)


def _check_same_field(a: "ExactMatrix", b: "ExactMatrix"):
    if a.field != b.field:
        raise FieldError(f"mixed fields: {a.field!r} vs {b.field!r}")


class ExactMatrix:
    """Immutable dense matrix of exact field elements (row-major)."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_np")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        # trusts entries to be canonical; use from_rows for untrusted input
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ShapeError("ragged rows")
            if ncols is not None and ncols != self.ncols:
                raise ShapeError("ncols does not match row length")
        else:
            self.ncols = ncols or 0
        self._np = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "ExactMatrix":
        return cls(field, [[field.element(x) for x in r] for r in rows], ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "ExactMatrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, cols, nrows: int) -> "ExactMatrix":
        cols = list(cols)
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "ExactMatrix":
        """The matrix unit with a single 1 at (i, j)."""
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = field.one
        return cls(field, rows, n)

    # -- basics -------------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        return f"ExactMatrix({self.field!r}, {[list(r) for r in self.rows]!r})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == ExactMatrix.identity(self.field, self.nrows)

    def flatten(self) -> tuple:
        """Row-major entry tuple."""
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def from_flat(cls, field: Field, flat, nrows: int, ncols: int) -> "ExactMatrix":
        flat = list(flat)
        if len(flat) != nrows * ncols:
            raise ShapeError("flat length does not match shape")
        return cls(field, [flat[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"add: {self.shape} vs {other.shape}")
        add = self.field.add
        return ExactMatrix(
            self.field,
            [tuple(add(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        neg = self.field.neg
        return ExactMatrix(self.field, [tuple(neg(x) for x in r) for r in self.rows], self.ncols)

    def scale(self, c) -> "ExactMatrix":
        mul = self.field.mul
        return ExactMatrix(self.field, [tuple(mul(c, x) for x in r) for r in self.rows], self.ncols)

    def _as_np(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array([list(r) for r in self.rows], dtype=np.int64).reshape(
                self.nrows, self.ncols
            )
        return self._np

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise ShapeError(f"matmul: {self.shape} @ {other.shape}")
        field = self.field
        if (
            isinstance(field, PrimeField)
            and self.ncols > 0
            and (field.p - 1) ** 2 * self.ncols < 2**63
        ):
            prod = (self._as_np() @ other._as_np()) % field.p
            return ExactMatrix(field, prod.tolist(), other.ncols)
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        canon = field.canon
        zero = field.zero
        out = []
        for r in self.rows:
            out.append(
                tuple(
                    canon(sum((x * y for x, y in zip(r, c)), zero)) for c in cols
                )
                if self.ncols
                else tuple(zero for _ in range(other.ncols))
            )
        return ExactMatrix(field, out, other.ncols)

    def pow(self, k: int) -> "ExactMatrix":
        """Matrix power by repeated squaring; A.pow(0) is the identity."""
        if self.nrows != self.ncols:
            raise ShapeError("pow of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = ExactMatrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, list(zip(*self.rows)) if self.nrows else [], self.nrows)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()


def mat_vec(A: ExactMatrix, v) -> tuple:
    """Matrix times column vector (vector as a plain tuple/list)."""
    if len(v) != A.ncols:
        raise ShapeError("mat_vec length mismatch")
    canon = A.field.canon
    zero = A.field.zero
    return tuple(canon(sum((x * y for x, y in zip(r, v)), zero)) for r in A.rows)


def hstack(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    _check_same_field(A, B)
    if A.nrows != B.nrows:
        raise ShapeError("hstack row mismatch")
    return ExactMatrix(A.field, [ra + rb for ra, rb in zip(A.rows, B.rows)], A.ncols + B.ncols)


def vstack(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    _check_same_field(A, B)
    if A.ncols != B.ncols:
        raise ShapeError("vstack col mismatch")
    return ExactMatrix(A.field, list(A.rows) + list(B.rows), A.ncols)


# -- row reduction -----------------------------------------------------------


@dataclass(frozen=True)
class Rref:
    matrix: ExactMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _rref_modp(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = arr % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        # entries stay below p^2 < 2^63, so the outer-product update is exact
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_rational(rows: tuple) -> tuple[list[tuple], list[int]]:
    # scale each row to a primitive integer vector, eliminate with integer
    # cross-multiples (gcd-reduced to control growth), normalize at the end
    mat: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        mat.append(ints)
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        prow = mat[r]
        pv = prow[c]
        for i in range(nrows):
            if i == r or mat[i][c] == 0:
                continue
            f = mat[i][c]
            new = [pv * a - f * b for a, b in zip(mat[i], prow)]
            g = 0
            for v in new:
                g = gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            mat[i] = new
        pivots.append(c)
        r += 1
    out: list[tuple] = []
    for i in range(nrows):
        if i < len(pivots):
            pv = mat[i][pivots[i]]
            out.append(tuple(Fraction(v, pv) for v in mat[i]))
        else:
            out.append(tuple(Fraction(0) for _ in range(ncols)))
    return out, pivots


def rref(A: ExactMatrix) -> Rref:
    """Reduced row-echelon form with pivot columns (strictly increasing)."""
    if A.nrows == 0 or A.ncols == 0:
        return Rref(A, ())
    if isinstance(A.field, PrimeField):
        arr, pivots = _rref_modp(A._as_np().copy(), A.field.p)
        return Rref(ExactMatrix(A.field, arr.tolist(), A.ncols), tuple(pivots))
    rows, pivots = _rref_rational(A.rows)
    return Rref(ExactMatrix(A.field, rows, A.ncols), tuple(pivots))


def rank(A: ExactMatrix) -> int:
    return rref(A).rank


def inverse(A: ExactMatrix) -> ExactMatrix:
    if A.nrows != A.ncols:
        raise ShapeError("inverse of a non-square matrix")
    n = A.nrows
    red = rref(hstack(A, ExactMatrix.identity(A.field, n)))
    if red.rank != n or any(p >= n for p in red.pivots):
        raise ValueError("matrix is singular")
    return ExactMatrix(A.field, [r[n:] for r in red.matrix.rows], n)


# -- subspaces ----------------------------------------------------------------


class Subspace:
    """A subspace of F^n held by a canonical column-reduced echelon basis.

    Equal subspaces have identical bases, so equality is representation
    equality.  The basis matrix is ambient_dim x dim with independent
    columns whose leading entries are 1 at strictly increasing rows.
    """

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field: Field, ambient_dim: int, basis: ExactMatrix):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_spanning(cls, field: Field, ambient_dim: int, vectors) -> "Subspace":
        """Canonical subspace spanned by the given vectors."""
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError("spanning vector of wrong length")
        if not vectors:
            return cls(field, ambient_dim, ExactMatrix(field, [() for _ in range(ambient_dim)], 0))
        red = rref(ExactMatrix(field, vectors, ambient_dim))
        rows = red.matrix.rows[: red.rank]
        return cls(field, ambient_dim, ExactMatrix.from_columns(field, rows, ambient_dim))

    @classmethod
    def from_matrix_columns(cls, A: ExactMatrix) -> "Subspace":
        return cls.from_spanning(A.field, A.nrows, A.columns())

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls.from_spanning(field, ambient_dim, [])

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, ExactMatrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim} over {self.field!r})"

    def contains(self, v) -> bool:
        stacked = hstack(self.basis, ExactMatrix.from_columns(self.field, [tuple(v)], self.ambient_dim))
        return rank(stacked) == self.dim


def kernel_basis(A: ExactMatrix) -> Subspace:
    """Canonical basis of the null space of A."""
    red = rref(A)
    field = A.field
    n = A.ncols
    pivot_set = set(red.pivots)
    free = [j for j in range(n) if j not in pivot_set]
    vectors = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for i, pc in enumerate(red.pivots):
            v[pc] = field.neg(red.matrix.rows[i][f])
        vectors.append(v)
    return Subspace.from_spanning(field, n, vectors)


def image_basis(A: ExactMatrix) -> Subspace:
    """Canonical basis of the column space of A."""
    return Subspace.from_matrix_columns(A)


def subspace_leq(U: Subspace, V: Subspace) -> bool:
    """True iff U is contained in V (same ambient space)."""
    if U.field != V.field:
        raise FieldError("subspace_leq over different fields")
    if U.ambient_dim != V.ambient_dim:
        raise ShapeError("subspace_leq ambient dimension mismatch")
    if U.dim == 0:
        return True
    return rank(hstack(V.basis, U.basis)) == V.dim


def subspace_sum(parts: list[Subspace]) -> Subspace:
    if not parts:
        raise ValueError("empty sum")
    field, n = parts[0].field, parts[0].ambient_dim
    vectors = []
    for s in parts:
        if s.field != field or s.ambient_dim != n:
            raise ShapeError("subspace_sum over mismatched ambients")
        vectors.extend(zip(*s.basis.rows) if s.dim else [])
    return Subspace.from_spanning(field, n, vectors)


def direct_sum_check(parts: list[Subspace], expected_total: int | None = None) -> bool:
    """True iff the parts are independent (and dims sum to expected_total, if given)."""
    if not parts:
        return expected_total in (None, 0)
    field, n = parts[0].field, parts[0].ambient_dim
    total = 0
    vectors = []
    for s in parts:
        if s.field != field or s.ambient_dim != n:
            raise ShapeError("direct_sum_check over mismatched ambients")
        total += s.dim
        vectors.extend(zip(*s.basis.rows) if s.dim else [])
    if expected_total is not None and total != expected_total:
        return False
    if total > n:
        return False
    if not vectors:
        return True
    return rank(ExactMatrix(field, vectors, n)) == total


def solve(A: ExactMatrix, b) -> tuple | None:
    """Some x with A x = b, or None if the system is inconsistent."""
    b = tuple(b)
    if len(b) != A.nrows:
        raise ShapeError("solve: right-hand side length mismatch")
    X = solve_matrix(A, ExactMatrix.from_columns(A.field, [b], A.nrows))
    return X.column(0) if X is not None else None


def solve_matrix(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix | None:
    """Some X with A X = B (free variables set to zero), or None."""
    _check_same_field(A, B)
    if A.nrows != B.nrows:
        raise ShapeError("solve_matrix: row mismatch")
    red = rref(hstack(A, B))
    n = A.ncols
    if any(p >= n for p in red.pivots):
        return None
    field = A.field
    rows = [[field.zero] * B.ncols for _ in range(n)]
    for i, pc in enumerate(red.pivots):
        rows[pc] = list(red.matrix.rows[i][n:])
    return ExactMatrix(field, rows, B.ncols)


# -- incremental span tracking -------------------------------------------------


class SpanReducer:
    """Incremental linear-independence filter over raw field vectors."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field):
        self.field = field
        self.rows: list[tuple[int, list]] = []  # (pivot index, normalized vector)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residue(self, vec) -> list:
        f = self.field
        v = list(vec)
        for p, row in self.rows:
            c = v[p]
            if not f.is_zero(c):
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Add a vector; returns True iff it enlarged the span."""
        f = self.field
        v = self.residue(vec)
        pivot = next((i for i, x in enumerate(v) if not f.is_zero(x)), None)
        if pivot is None:
            return False
        inv = f.inv(v[pivot])
        v = [f.mul(inv, x) for x in v]
        self.rows.append((pivot, v))
        return True

    def contains(self, vec) -> bool:
        f = self.field
        return all(f.is_zero(x) for x in self.residue(vec))


# -- matrix text format ----------------------------------------------------------


def parse_matrix(text: str) -> ExactMatrix:
    """Parse the matrix text format.

    Line 1: ``field Fp <p>`` or ``field Q``; line 2: ``<rows> <cols>``;
    then ``rows`` lines of ``cols`` whitespace-separated entries.
    """
    lines = text.splitlines()
    rows_of_tokens = []
    line_numbers = []
    for idx, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            rows_of_tokens.append(stripped.split())
            line_numbers.append(idx)
    if not rows_of_tokens:
        raise ParseError("empty matrix file")

    def token_col(line_no: int, token_index: int) -> int:
        raw = lines[line_no - 1]
        pos = 0
        for _ in range(token_index + 1):
            while pos < len(raw) and raw[pos].isspace():
                pos += 1
            start = pos
            while pos < len(raw) and not raw[pos].isspace():
                pos += 1
        return start + 1

    header = rows_of_tokens[0]
    hline = line_numbers[0]
    if not header or header[0] != "field":
        raise ParseError("expected 'field Fp <p>' or 'field Q'", hline, 1)
    if header[1:] == ["Q"]:
        field: Field = QQ
    elif len(header) == 3 and header[1] == "Fp":
        try:
            p = int(header[2])
            field = PrimeField(p)
        except (ValueError, FieldError) as exc:
            raise ParseError(f"bad field: {exc}", hline, token_col(hline, 2)) from exc
    else:
        raise ParseError("expected 'field Fp <p>' or 'field Q'", hline, 1)

    if len(rows_of_tokens) < 2:
        raise ParseError("missing dimension line", hline + 1)
    dims = rows_of_tokens[1]
    dline = line_numbers[1]
    if len(dims) != 2 or not all(t.isdigit() for t in dims):
        raise ParseError("expected '<rows> <cols>'", dline, 1)
    nrows, ncols = int(dims[0]), int(dims[1])
    entry_rows = rows_of_tokens[2:]
    entry_lines = line_numbers[2:]
    if len(entry_rows) != nrows:
        raise ParseError(f"expected {nrows} entry rows, found {len(entry_rows)}", dline)
    data = []
    for tokens, lineno in zip(entry_rows, entry_lines):
        if len(tokens) != ncols:
            raise ParseError(f"expected {ncols} entries, found {len(tokens)}", lineno, 1)
        row = []
        for j, tok in enumerate(tokens):
            try:
                row.append(field.parse(tok))
            except FieldError as exc:
                raise ParseError(str(exc), lineno, token_col(lineno, j)) from exc
        data.append(row)
    return ExactMatrix(field, data, ncols)


def format_matrix(A: ExactMatrix) -> str:
    if isinstance(A.field, PrimeField):
        head = f"field Fp {A.field.p}"
    else:
        head = "field Q"
    lines = [head, f"{A.nrows} {A.ncols}"]
    fmt = A.field.format
    for r in A.rows:
        lines.append(" ".join(fmt(x) for x in r))
    return "\n".join(lines) + "\n"
