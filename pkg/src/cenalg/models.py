"""Matrix models over K[z] for the centralizer of a canonical nilpotent.

For a weakly decreasing block profile k_1 >= ... >= k_m, an m x m matrix of
polynomials acts on chain coordinates by right multiplication, inducing an
endomorphism that commutes with the shift.  Three nested coefficient
patterns matter (field coefficients make every "radical" term vanish):

- truncation ideal: entry (d, g) divisible by z^{k_g} (these act as zero);
- centralizer model: entry (d, g) divisible by z^{k_gap(d, g)},
  where k_gap(d, g) = k_g - k_d when k_d < k_g and 0 otherwise; this is
  exactly the set of matrices inducing well-defined endomorphisms, and
  modulo the truncation ideal it is anti-isomorphic to Cen of the shift;
- zero-level model: entry (d, g) divisible by z^(k_g - 1); modulo
  truncation it is anti-isomorphic to Cen0 of the shift.

TruncPolyMatrix stores entries per column modulo z^{k_g} (at most k_g
coefficients, constant term first), matching the truncation quotient.
All polynomial arithmetic is done at full degree and then truncated per
column.  Everything here is an immutable value.
"""

from dataclasses import dataclass

from .fields import Field, FieldError, PrimeField
from .linalg import ExactMatrix, ShapeError, inverse
from .jordan import JordanBase

# membership kinds
TRUNCATION = "truncation"
CEN_MODEL = "centralizer"
ZERO_LEVEL = "zero_level"

_KINDS = (TRUNCATION, CEN_MODEL, ZERO_LEVEL)


class MembershipError(ValueError):
    """A polynomial matrix lies outside the required coefficient pattern."""

    def __init__(self, kind: str, position: tuple[int, int]):
        self.kind = kind
        self.position = position
        super().__init__(f"entry {position} violates the {kind} pattern")


# -- plain polynomial helpers (coefficient lists, constant term first) --------


def poly_trim(field: Field, coeffs) -> tuple:
    c = list(coeffs)
    while c and field.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def poly_add(field: Field, a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = field.add(out[i], x)
    return poly_trim(field, out)


def poly_scale(field: Field, c, a) -> tuple:
    return poly_trim(field, [field.mul(c, x) for x in a])


def poly_mul(field: Field, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return poly_trim(field, out)


def poly_coeff(field: Field, a, j: int):
    return a[j] if 0 <= j < len(a) else field.zero


def poly_shift(field: Field, a, e: int) -> tuple:
    """Multiply by z^e."""
    if not a:
        return ()
    return (field.zero,) * e + tuple(a)


def poly_divisible(field: Field, a, e: int) -> bool:
    """True iff z^e divides the polynomial."""
    return all(field.is_zero(x) for x in a[: min(e, len(a))])


# -- block profiles ------------------------------------------------------------


@dataclass(frozen=True)
class BlockProfile:
    """Weakly decreasing block sizes k_1 >= ... >= k_m >= 1 over a field."""

    sizes: tuple[int, ...]
    field: Field

    def __post_init__(self):
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise ValueError("empty block profile")
        if any(k < 1 for k in sizes):
            raise ValueError("block sizes must be >= 1")
        if any(a < b for a, b in zip(sizes, sizes[1:])):
            raise ValueError("block sizes must be weakly decreasing")

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return self.sizes[0]

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    def k_gap(self, d: int, g: int) -> int:
        """k_g - k_d when k_d < k_g, else 0 (0-based block indices)."""
        kd, kg = self.sizes[d], self.sizes[g]
        return kg - kd if kd < kg else 0

    def required_valuation(self, d: int, g: int, kind: str) -> int:
        if kind == TRUNCATION:
            return self.sizes[g]
        if kind == CEN_MODEL:
            return self.k_gap(d, g)
        if kind == ZERO_LEVEL:
            return self.sizes[g] - 1
        raise ValueError(f"unknown membership kind {kind!r}")

    def canonical_nilpotent(self) -> ExactMatrix:
        """Block-diagonal lower-shift matrix with blocks of the profile sizes."""
        d = self.dim
        field = self.field
        rows = [[field.zero] * d for _ in range(d)]
        off = 0
        for k in self.sizes:
            for i in range(k - 1):
                rows[off + i + 1][off + i] = field.one
            off += k
        return ExactMatrix(field, rows, d)

    def canonical_base(self) -> JordanBase:
        """The chain basis of the canonical nilpotent (base change = identity)."""
        return JordanBase(self.sizes, ExactMatrix.identity(self.field, self.dim), self.n)

    def block_offsets(self) -> list[int]:
        offs = [0]
        for k in self.sizes:
            offs.append(offs[-1] + k)
        return offs[:-1]


def membership_offender(
    profile: BlockProfile, entries, kind: str
) -> tuple[int, int] | None:
    """First (row, col) whose entry misses the pattern, or None if all pass.

    `entries` is an m x m array of coefficient lists of arbitrary degree
    (not yet truncated); a TruncPolyMatrix's stored entries also qualify.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown membership kind {kind!r}")
    field = profile.field
    m = profile.m
    for d in range(m):
        for g in range(m):
            if not poly_divisible(field, entries[d][g], profile.required_valuation(d, g, kind)):
                return (d, g)
    return None


def membership(profile: BlockProfile, entries, kind: str) -> bool:
    """Entrywise coefficient-pattern test for full-degree polynomial matrices."""
    return membership_offender(profile, entries, kind) is None


def poly_matrix_mul(field: Field, a, b) -> list[list[tuple]]:
    """Full-degree product of two m x m polynomial matrices."""
    m = len(a)
    out = []
    for d in range(m):
        row = []
        for g in range(m):
            acc: tuple = ()
            for t in range(m):
                acc = poly_add(field, acc, poly_mul(field, a[d][t], b[t][g]))
            row.append(acc)
        out.append(row)
    return out


# -- truncated polynomial matrices -----------------------------------------------


class TruncPolyMatrix:
    """m x m polynomial matrix with entry (d, g) stored modulo z^{k_g}."""

    __slots__ = ("profile", "entries")

    def __init__(self, profile: BlockProfile, entries):
        # trusts entries to be truncated/trimmed; use from_entries otherwise
        self.profile = profile
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def from_entries(cls, profile: BlockProfile, entries) -> "TruncPolyMatrix":
        field = profile.field
        m = profile.m
        entries = [list(row) for row in entries]
        if len(entries) != m or any(len(r) != m for r in entries):
            raise ShapeError(f"expected {m} x {m} polynomial entries")
        rows = []
        for d in range(m):
            row = []
            for g in range(m):
                coeffs = [field.element(c) for c in entries[d][g]][: profile.sizes[g]]
                row.append(poly_trim(field, coeffs))
            rows.append(row)
        return cls(profile, rows)

    @classmethod
    def zero(cls, profile: BlockProfile) -> "TruncPolyMatrix":
        return cls(profile, [[()] * profile.m for _ in range(profile.m)])

    @classmethod
    def one(cls, profile: BlockProfile) -> "TruncPolyMatrix":
        one = profile.field.one
        m = profile.m
        return cls(
            profile,
            [[(one,) if d == g else () for g in range(m)] for d in range(m)],
        )

    @classmethod
    def monomial(cls, profile: BlockProfile, d: int, g: int, e: int, coeff=None) -> "TruncPolyMatrix":
        """coeff * z^e at position (d, g), zero elsewhere."""
        field = profile.field
        if coeff is None:
            coeff = field.one
        if e >= profile.sizes[g]:
            return cls.zero(profile)
        entry = tuple([field.zero] * e + [field.element(coeff)])
        rows = [[() for _ in range(profile.m)] for _ in range(profile.m)]
        rows[d][g] = entry
        return cls(profile, rows)

    def __eq__(self, other):
        return (
            isinstance(other, TruncPolyMatrix)
            and self.profile == other.profile
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.profile, self.entries))

    def __repr__(self):
        return f"TruncPolyMatrix({self.profile.sizes}, {self.entries!r})"

    def entry(self, d: int, g: int) -> tuple:
        return self.entries[d][g]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __add__(self, other: "TruncPolyMatrix") -> "TruncPolyMatrix":
        self._check(other)
        field = self.profile.field
        return TruncPolyMatrix(
            self.profile,
            [
                [poly_add(field, a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "TruncPolyMatrix") -> "TruncPolyMatrix":
        return self + other.scale(self.profile.field.neg(self.profile.field.one))

    def scale(self, c) -> "TruncPolyMatrix":
        field = self.profile.field
        return TruncPolyMatrix(
            self.profile, [[poly_scale(field, c, e) for e in row] for row in self.entries]
        )

    def __matmul__(self, other: "TruncPolyMatrix") -> "TruncPolyMatrix":
        """Product computed at full degree, then truncated per column."""
        self._check(other)
        profile = self.profile
        field = profile.field
        full = poly_matrix_mul(field, self.entries, other.entries)
        rows = []
        for d in range(profile.m):
            rows.append(
                [poly_trim(field, full[d][g][: profile.sizes[g]]) for g in range(profile.m)]
            )
        return TruncPolyMatrix(profile, rows)

    def member(self, kind: str) -> bool:
        return membership(self.profile, self.entries, kind)

    def _check(self, other: "TruncPolyMatrix"):
        if self.profile != other.profile:
            raise ShapeError("mismatched block profiles")

    def flatten(self) -> tuple:
        """Fixed-layout coefficient tuple (entry (d, g) padded to k_g)."""
        field = self.profile.field
        out = []
        for d in range(self.profile.m):
            for g in range(self.profile.m):
                e = self.entries[d][g]
                out.extend(e)
                out.extend([field.zero] * (self.profile.sizes[g] - len(e)))
        return tuple(out)


# -- coefficient vectors ------------------------------------------------------------


class CoefficientVector:
    """Row vector of per-block polynomials, block g truncated at z^{k_g}."""

    __slots__ = ("profile", "coords")

    def __init__(self, profile: BlockProfile, coords):
        self.profile = profile
        self.coords = tuple(tuple(c) for c in coords)

    @classmethod
    def from_polys(cls, profile: BlockProfile, polys) -> "CoefficientVector":
        field = profile.field
        polys = list(polys)
        if len(polys) != profile.m:
            raise ShapeError(f"expected {profile.m} coordinate polynomials")
        coords = [
            poly_trim(field, [field.element(c) for c in poly][: profile.sizes[g]])
            for g, poly in enumerate(polys)
        ]
        return cls(profile, coords)

    @classmethod
    def unit(cls, profile: BlockProfile, g: int) -> "CoefficientVector":
        polys = [() for _ in range(profile.m)]
        polys[g] = (profile.field.one,)
        return cls(profile, polys)

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientVector)
            and self.profile == other.profile
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.profile, self.coords))

    def __repr__(self):
        return f"CoefficientVector({self.profile.sizes}, {self.coords!r})"

    def add(self, other: "CoefficientVector") -> "CoefficientVector":
        if self.profile != other.profile:
            raise ShapeError("mismatched block profiles")
        field = self.profile.field
        return CoefficientVector(
            self.profile,
            [poly_add(field, a, b) for a, b in zip(self.coords, other.coords)],
        )

    def scale(self, c) -> "CoefficientVector":
        field = self.profile.field
        return CoefficientVector(self.profile, [poly_scale(field, c, a) for a in self.coords])

    def shift(self) -> "CoefficientVector":
        """Multiply by z (with per-block truncation)."""
        field = self.profile.field
        out = []
        for g, a in enumerate(self.coords):
            shifted = (field.zero,) + a
            out.append(poly_trim(field, shifted[: self.profile.sizes[g]]))
        return CoefficientVector(self.profile, out)

    def right_mul(self, P: TruncPolyMatrix) -> "CoefficientVector":
        """The vector-matrix product f P, truncated per block."""
        if self.profile != P.profile:
            raise ShapeError("mismatched block profiles")
        field = self.profile.field
        out = []
        for g in range(self.profile.m):
            acc: tuple = ()
            for d in range(self.profile.m):
                acc = poly_add(field, acc, poly_mul(field, self.coords[d], P.entries[d][g]))
            out.append(poly_trim(field, acc[: self.profile.sizes[g]]))
        return CoefficientVector(self.profile, out)


def chain_combination(f: CoefficientVector, base: JordanBase) -> tuple:
    """Expand a coefficient vector along the chain basis into ambient coordinates.

    Block g with coefficients a_0, a_1, ... contributes a_0 x_{g,1} + a_1
    x_{g,2} + ...; coefficients at or beyond z^{k_g} are truncated away.
    """
    profile = f.profile
    if tuple(base.block_sizes) != profile.sizes:
        raise ShapeError("coefficient vector profile does not match the chain basis")
    field = profile.field
    coords = [field.zero] * base.dim
    for g, off in enumerate(base.block_offsets()):
        for i, c in enumerate(f.coords[g]):
            coords[off + i] = c
    from .linalg import mat_vec

    return mat_vec(base.base_change, coords)


def induced_endomorphism(P: TruncPolyMatrix, base: JordanBase) -> ExactMatrix:
    """Ambient matrix of the endomorphism induced by right multiplication by P.

    The chain vector x_{g,i} is sent to the expansion of z^(i-1) * (row g
    of P); in chain coordinates the ((d, j), (g, i)) entry is the
    coefficient of z^(j-i) in entry (g, d) of P.  Requires membership in
    the centralizer model; matrices in the truncation ideal act as zero.
    """
    profile = P.profile
    if tuple(base.block_sizes) != profile.sizes:
        raise ShapeError("polynomial matrix profile does not match the chain basis")
    offender = membership_offender(profile, P.entries, CEN_MODEL)
    if offender is not None:
        raise MembershipError(CEN_MODEL, offender)
    field = profile.field
    dim = profile.dim
    offs = profile.block_offsets()
    rows = [[field.zero] * dim for _ in range(dim)]
    for g in range(profile.m):
        for d in range(profile.m):
            entry = P.entries[g][d]
            if not entry:
                continue
            for i in range(1, profile.sizes[g] + 1):
                for j in range(1, profile.sizes[d] + 1):
                    c = poly_coeff(field, entry, j - i)
                    if not field.is_zero(c):
                        rows[offs[d] + j - 1][offs[g] + i - 1] = c
    M = ExactMatrix(field, rows, dim)
    C = base.base_change
    if C.is_identity():
        return M
    return C @ M @ inverse(C)


# -- model dimensions and residue patterns ----------------------------------------


@dataclass(frozen=True)
class ModelDims:
    """Dimensions of the three quotients attached to a profile."""

    cen_model_dim: int      # centralizer model modulo truncation: sum of min(k_d, k_g)
    zero_level_dim: int     # zero-level model modulo truncation: m^2
    quotient_dim: int       # centralizer model modulo zero-level model


def model_dims(profile: BlockProfile) -> ModelDims:
    m = profile.m
    total = sum(
        profile.sizes[g] - profile.k_gap(d, g) for d in range(m) for g in range(m)
    )
    return ModelDims(total, m * m, total - m * m)


@dataclass(frozen=True)
class ResiduePattern:
    """Allowed constant-term positions of a residue algebra, with its dimension."""

    positions: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.positions)


def zero_level_residue(profile: BlockProfile) -> ResiduePattern:
    """Constant-term pattern of the zero-level model: all rows, columns with k_g = 1."""
    m = profile.m
    positions = tuple(
        (d, g) for d in range(m) for g in range(m) if profile.sizes[g] == 1
    )
    return ResiduePattern(positions)


def centralizer_residue(profile: BlockProfile) -> ResiduePattern:
    """Constant-term pattern of the centralizer model: k_d >= k_g >= 2."""
    m = profile.m
    positions = tuple(
        (d, g)
        for d in range(m)
        for g in range(m)
        if profile.sizes[d] >= profile.sizes[g] >= 2
    )
    return ResiduePattern(positions)


def residue_projection(P: TruncPolyMatrix, target: str) -> ExactMatrix:
    """Constant-term projection onto a residue pattern.

    target "zero_level": requires membership in the zero-level model; keeps
    constant terms at columns with k_g = 1 (elsewhere they vanish anyway).
    target "centralizer": requires membership in the centralizer model;
    keeps constant terms at columns with k_g >= 2 and drops columns with
    k_g = 1.
    """
    profile = P.profile
    field = profile.field
    m = profile.m
    if target == "zero_level":
        offender = membership_offender(profile, P.entries, ZERO_LEVEL)
        if offender is not None:
            raise MembershipError(ZERO_LEVEL, offender)
        keep = {g for g in range(m) if profile.sizes[g] == 1}
    elif target == "centralizer":
        offender = membership_offender(profile, P.entries, CEN_MODEL)
        if offender is not None:
            raise MembershipError(CEN_MODEL, offender)
        keep = {g for g in range(m) if profile.sizes[g] >= 2}
    else:
        raise ValueError(f"unknown residue target {target!r}")
    rows = [
        [
            poly_coeff(field, P.entries[d][g], 0) if g in keep else field.zero
            for g in range(m)
        ]
        for d in range(m)
    ]
    return ExactMatrix(field, rows, m)


# -- model bases -----------------------------------------------------------------


def cen_model_basis(profile: BlockProfile) -> list[TruncPolyMatrix]:
    """Monomial basis of the centralizer model modulo truncation."""
    out = []
    for d in range(profile.m):
        for g in range(profile.m):
            for e in range(profile.k_gap(d, g), profile.sizes[g]):
                out.append(TruncPolyMatrix.monomial(profile, d, g, e))
    return out


def zero_level_model_basis(profile: BlockProfile) -> list[TruncPolyMatrix]:
    """Monomial basis of the zero-level model modulo truncation (m^2 elements)."""
    out = []
    for d in range(profile.m):
        for g in range(profile.m):
            out.append(TruncPolyMatrix.monomial(profile, d, g, profile.sizes[g] - 1))
    return out


# -- the quotient algebra (centralizer model mod zero-level model) ------------------


class QuotientModel:
    """Cosets of the centralizer model modulo the zero-level model.

    Elements are m x m coefficient arrays with entry (d, g) capped at
    z^(k_g - 1); multiplication is the full-degree product followed by the
    cap, which is well defined on cosets because the zero-level model is a
    two-sided ideal of the centralizer model.  With opposite=True the
    product order is flipped, which is the orientation matching the factor
    Cen/Cen0 of the shift.
    """

    def __init__(self, profile: BlockProfile, opposite: bool = False):
        self.profile = profile
        self.field = profile.field
        self.opposite = opposite
        self.caps = tuple(k - 1 for k in profile.sizes)
        self.basis = tuple(
            self._monomial(d, g, e)
            for d in range(profile.m)
            for g in range(profile.m)
            for e in range(profile.k_gap(d, g), profile.sizes[g] - 1)
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, entries) -> tuple:
        field = self.field
        return tuple(
            tuple(poly_trim(field, tuple(entries[d][g])[: self.caps[g]]) for g in range(self.profile.m))
            for d in range(self.profile.m)
        )

    def _monomial(self, d: int, g: int, e: int) -> tuple:
        field = self.field
        m = self.profile.m
        rows = [[() for _ in range(m)] for _ in range(m)]
        rows[d][g] = tuple([field.zero] * e + [field.one])
        return self._reduce(rows)

    def from_trunc(self, P: TruncPolyMatrix) -> tuple:
        """Coset of a centralizer-model element."""
        offender = membership_offender(self.profile, P.entries, CEN_MODEL)
        if offender is not None:
            raise MembershipError(CEN_MODEL, offender)
        return self._reduce(P.entries)

    def lift(self, a) -> TruncPolyMatrix:
        """A centralizer-model representative of a coset."""
        return TruncPolyMatrix.from_entries(self.profile, [list(row) for row in a])

    def zero(self) -> tuple:
        m = self.profile.m
        return tuple(tuple(() for _ in range(m)) for _ in range(m))

    def is_zero(self, a) -> bool:
        return all(not e for row in a for e in row)

    def add(self, a, b) -> tuple:
        field = self.field
        return self._reduce(
            [
                [poly_add(field, x, y) for x, y in zip(ra, rb)]
                for ra, rb in zip(a, b)
            ]
        )

    def scale(self, c, a) -> tuple:
        field = self.field
        return self._reduce([[poly_scale(field, c, x) for x in row] for row in a])

    def mul(self, a, b) -> tuple:
        if self.opposite:
            a, b = b, a
        return self._reduce(poly_matrix_mul(self.field, a, b))

    def flatten(self, a) -> tuple:
        field = self.field
        out = []
        for d in range(self.profile.m):
            for g in range(self.profile.m):
                e = a[d][g]
                out.extend(e)
                out.extend([field.zero] * (self.caps[g] - len(e)))
        return tuple(out)

    def describe(self, a) -> str:
        fmt = self.field.format
        rows = []
        for row in a:
            rows.append(" ".join("[" + ",".join(fmt(c) for c in e) + "]" for e in row))
        return "; ".join(rows)

    def element_count(self) -> int | None:
        return None if self.field.order is None else self.field.order**self.dim

    def elements(self):
        """All cosets (prime fields only)."""
        import itertools as _it

        if self.field.order is None:
            raise FieldError("cannot enumerate cosets over an infinite field")
        for coeffs in _it.product(self.field.iter_elements(), repeat=self.dim):
            acc = self.zero()
            for c, b in zip(coeffs, self.basis):
                if not self.field.is_zero(c):
                    acc = self.add(acc, self.scale(c, b))
            yield acc

    def random_element(self, rng) -> tuple:
        acc = self.zero()
        for b in self.basis:
            c = self.field.random(rng)
            if not self.field.is_zero(c):
                acc = self.add(acc, self.scale(c, b))
        return acc


# -- polynomial matrix text format ---------------------------------------------------


def parse_poly_matrix(text: str, default_field: Field | None = None):
    """Parse the polynomial-matrix text format.

    Optional ``field Fp <p>`` / ``field Q`` line, then ``profile k1 ... km``,
    then m lines of m bracketed coefficient lists like ``[0,1]`` (constant
    term first; ``[]`` is zero).  Returns (profile, entries) with
    full-degree entries; membership checks and truncation happen later.
    """
    from .fields import QQ

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not lines:
        from .linalg import ParseError

        raise ParseError("empty polynomial matrix file")
    from .linalg import ParseError

    field = default_field
    idx = 0
    lineno, first = lines[idx]
    tokens = first.split()
    if tokens[0] == "field":
        if tokens[1:] == ["Q"]:
            field = QQ
        elif len(tokens) == 3 and tokens[1] == "Fp":
            try:
                field = PrimeField(int(tokens[2]))
            except (ValueError, FieldError) as exc:
                raise ParseError(f"bad field: {exc}", lineno) from exc
        else:
            raise ParseError("expected 'field Fp <p>' or 'field Q'", lineno)
        idx += 1
    if field is None:
        field = QQ
    if idx >= len(lines):
        raise ParseError("missing 'profile k1 ... km' line")
    lineno, header = lines[idx]
    tokens = header.split()
    if tokens[0] != "profile" or len(tokens) < 2 or not all(t.isdigit() for t in tokens[1:]):
        raise ParseError("expected 'profile k1 k2 ... km'", lineno)
    try:
        profile = BlockProfile(tuple(int(t) for t in tokens[1:]), field)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from exc
    idx += 1
    m = profile.m
    body = lines[idx:]
    if len(body) != m:
        raise ParseError(f"expected {m} entry rows, found {len(body)}")
    import re as _re

    entries = []
    for lineno, ln in body:
        groups = _re.findall(r"\[[^\[\]]*\]", ln)
        if len(groups) != m or "".join(groups) != ln.replace(" ", ""):
            raise ParseError(f"expected {m} bracketed entries", lineno)
        row = []
        for grp in groups:
            inner = grp[1:-1].strip()
            if not inner:
                row.append(())
                continue
            try:
                row.append(tuple(field.parse(tok.strip()) for tok in inner.split(",")))
            except FieldError as exc:
                raise ParseError(str(exc), lineno) from exc
        entries.append(row)
    return profile, entries


def format_poly_matrix(profile: BlockProfile, entries) -> str:
    field = profile.field
    if isinstance(field, PrimeField):
        head = [f"field Fp {field.p}"]
    else:
        head = ["field Q"]
    head.append("profile " + " ".join(str(k) for k in profile.sizes))
    for row in entries:
        head.append(" ".join("[" + ",".join(field.format(c) for c in e) + "]" for e in row))
    return "\n".join(head) + "\n"
