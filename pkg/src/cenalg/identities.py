"""Noncommutative polynomials and identity checking in finite matrix algebras.

A polynomial is a formal sum of coefficient-word pairs in indeterminates
x1..xr; evaluation substitutes algebra elements for the variables and
multiplies along each word (reversed under opposite multiplication).  For
multilinear polynomials, vanishing on all basis tuples is equivalent to
vanishing everywhere, so exhaustive basis substitution is a complete check;
exhaustive substitution of all algebra elements is available under a budget,
and randomized substitution is explicitly inconclusive when no
counterexample shows up.
"""

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .fields import Field, PrimeField
from .jordan import rank_partition
from .linalg import ExactMatrix, ShapeError, SpanReducer
from .centralizer import DEFAULT_MAX_DIM, cen0_basis
from .models import (
    BlockProfile,
    QuotientModel,
    centralizer_residue,
    model_dims,
    zero_level_residue,
)

DEFAULT_BUDGET = 10**6

STANDARD = "standard"
OPPOSITE = "opposite"


class BudgetExceededError(ValueError):
    """An exhaustive check would require more substitutions than allowed."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"exhaustive check needs {needed} substitutions, budget is {budget}")


# -- noncommutative polynomials ---------------------------------------------------


@dataclass(frozen=True)
class NCPoly:
    """Canonical sum of (coefficient, word) terms in variables x1..x{num_vars}.

    Words are tuples of 1-based variable indices; terms are merged, zero
    coefficients dropped, and sorted, so equal polynomials compare equal.
    Coefficients are exact rationals and act in any field through its
    canonical map.
    """

    num_vars: int
    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    @classmethod
    def make(cls, num_vars: int, terms) -> "NCPoly":
        merged: dict[tuple[int, ...], Fraction] = {}
        for coeff, word in terms:
            word = tuple(word)
            if any(not 1 <= v <= num_vars for v in word):
                raise ValueError(f"variable index out of range in word {word}")
            merged[word] = merged.get(word, Fraction(0)) + Fraction(coeff)
        cleaned = tuple(
            sorted(((c, w) for w, c in merged.items() if c != 0), key=lambda t: (len(t[1]), t[1]))
        )
        return cls(num_vars, cleaned)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_multilinear(self) -> bool:
        """Every variable occurs exactly once in every word."""
        want = list(range(1, self.num_vars + 1))
        return all(sorted(word) == want for _, word in self.terms)

    def rename(self, offset: int, num_vars: int) -> "NCPoly":
        return NCPoly(
            num_vars,
            tuple((c, tuple(v + offset for v in w)) for c, w in self.terms),
        )

    def to_text(self) -> str:
        if not self.terms:
            return "+ 0 *"
        parts = []
        for coeff, word in self.terms:
            sign = "+" if coeff >= 0 else "-"
            mag = abs(coeff)
            mono = " ".join(f"x{v}" for v in word)
            parts.append(f"{sign} {mag} * {mono}".rstrip())
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "NCPoly":
        """Parse terms like ``+ 1 * x1 x2 - 1 * x2 x1`` (leading + optional)."""
        tokens = text.replace("*", " * ").split()
        if not tokens:
            raise ValueError("empty polynomial text")
        if tokens[0] not in "+-":
            tokens = ["+"] + tokens
        terms = []
        i = 0
        num_vars = 0
        while i < len(tokens):
            sign = tokens[i]
            if sign not in "+-":
                raise ValueError(f"expected sign, got {tokens[i]!r}")
            i += 1
            if i >= len(tokens):
                raise ValueError("dangling sign")
            coeff_tok = tokens[i]
            i += 1
            if not re.match(r"^\d+(/\d+)?$", coeff_tok):
                raise ValueError(f"bad coefficient {coeff_tok!r}")
            coeff = Fraction(coeff_tok)
            if sign == "-":
                coeff = -coeff
            if i < len(tokens) and tokens[i] == "*":
                i += 1
            word = []
            while i < len(tokens) and tokens[i] not in "+-":
                m = re.match(r"^x(\d+)$", tokens[i])
                if not m:
                    raise ValueError(f"bad variable token {tokens[i]!r}")
                v = int(m.group(1))
                if v < 1:
                    raise ValueError("variable indices start at x1")
                word.append(v)
                num_vars = max(num_vars, v)
                i += 1
            terms.append((coeff, tuple(word)))
        return cls.make(num_vars, terms)


def commutator() -> NCPoly:
    """x1 x2 - x2 x1."""
    return NCPoly.make(2, [(1, (1, 2)), (-1, (2, 1))])


def standard_polynomial(k: int) -> NCPoly:
    """Alternating sum over all orders of k distinct variables."""
    if k < 1:
        raise ValueError("standard polynomial needs k >= 1")
    terms = []
    for perm in itertools.permutations(range(1, k + 1)):
        inversions = sum(
            1 for a, b in itertools.combinations(range(k), 2) if perm[a] > perm[b]
        )
        terms.append((Fraction(-1) ** inversions, perm))
    return NCPoly.make(k, terms)


def product_identity(factors: list[NCPoly]) -> NCPoly:
    """Formal product with variables renamed disjointly per factor."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    total = sum(f.num_vars for f in factors)
    terms = [(Fraction(1), ())]
    offset = 0
    for f in factors:
        shifted = f.rename(offset, total)
        terms = [
            (c1 * c2, w1 + w2) for c1, w1 in terms for c2, w2 in shifted.terms
        ]
        offset += f.num_vars
    return NCPoly.make(total, terms)


def library() -> dict[str, NCPoly]:
    """Named identities: comm, comm2, s2, s4, s6, s4s4."""
    comm = commutator()
    return {
        "comm": comm,
        "comm2": product_identity([comm, comm]),
        "s2": standard_polynomial(2),
        "s4": standard_polynomial(4),
        "s6": standard_polynomial(6),
        "s4s4": product_identity([standard_polynomial(4), standard_polynomial(4)]),
    }


# -- finite algebras ------------------------------------------------------------


class MatrixAlgebra:
    """A span of d x d matrices closed under the chosen multiplication."""

    def __init__(
        self,
        field: Field,
        ambient_size: int,
        basis: list[ExactMatrix],
        multiplication: str = STANDARD,
        check: bool = True,
    ):
        if multiplication not in (STANDARD, OPPOSITE):
            raise ValueError(f"unknown multiplication {multiplication!r}")
        self.field = field
        self.ambient_size = ambient_size
        self.basis = tuple(basis)
        self.multiplication = multiplication
        for b in self.basis:
            if b.shape != (ambient_size, ambient_size) or b.field != field:
                raise ShapeError("basis matrix of wrong shape or field")
        if check:
            reducer = SpanReducer(field)
            for b in self.basis:
                if not reducer.add(b.flatten()):
                    raise ValueError("basis matrices are linearly dependent")
            for a in self.basis:
                for b in self.basis:
                    if not reducer.contains(self.mul(a, b).flatten()):
                        raise ValueError("basis is not closed under multiplication")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def zero(self) -> ExactMatrix:
        return ExactMatrix.zeros(self.field, self.ambient_size, self.ambient_size)

    def is_zero(self, a: ExactMatrix) -> bool:
        return a.is_zero()

    def add(self, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        return a + b

    def scale(self, c, a: ExactMatrix) -> ExactMatrix:
        return a.scale(c)

    def mul(self, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        return b @ a if self.multiplication == OPPOSITE else a @ b

    def flatten(self, a: ExactMatrix) -> tuple:
        return a.flatten()

    def describe(self, a: ExactMatrix) -> str:
        fmt = self.field.format
        return "; ".join(" ".join(fmt(x) for x in row) for row in a.rows)

    def element_count(self) -> int | None:
        return None if self.field.order is None else self.field.order**self.dim

    def elements(self):
        """All elements (prime fields only)."""
        if self.field.order is None:
            raise ValueError("cannot enumerate elements over an infinite field")
        for coeffs in itertools.product(self.field.iter_elements(), repeat=self.dim):
            acc = self.zero()
            for c, b in zip(coeffs, self.basis):
                if not self.field.is_zero(c):
                    acc = acc + b.scale(c)
            yield acc

    def random_element(self, rng) -> ExactMatrix:
        acc = self.zero()
        for b in self.basis:
            c = self.field.random(rng)
            if not self.field.is_zero(c):
                acc = acc + b.scale(c)
        return acc


def pattern_algebra(
    field: Field, m: int, positions, multiplication: str = STANDARD
) -> MatrixAlgebra:
    """Algebra spanned by matrix units at the given (row, col) positions."""
    basis = [ExactMatrix.unit(field, m, d, g) for d, g in positions]
    return MatrixAlgebra(field, m, basis, multiplication)


def algebra_from_basis(
    field: Field, basis: list[ExactMatrix], multiplication: str = STANDARD
) -> MatrixAlgebra:
    size = basis[0].nrows if basis else 0
    return MatrixAlgebra(field, size, basis, multiplication)


# -- evaluation -------------------------------------------------------------------


def evaluate(f: NCPoly, args: list[ExactMatrix], multiplication: str = STANDARD) -> ExactMatrix:
    """Evaluate a polynomial at matrices (opposite reverses every product)."""
    if len(args) < f.num_vars:
        raise ValueError(f"need {f.num_vars} arguments, got {len(args)}")
    field = args[0].field
    size = args[0].nrows
    if any(a.shape != (size, size) or a.field != field for a in args):
        raise ShapeError("evaluation arguments must be square, same size and field")
    alg = MatrixAlgebra(field, size, [], multiplication, check=False)
    return _evaluate_in(f, list(args), alg, identity=ExactMatrix.identity(field, size))


def _evaluate_in(f: NCPoly, args: list, algebra, identity=None):
    field = algebra.field
    acc = algebra.zero()
    for coeff, word in f.terms:
        if word:
            prod = args[word[0] - 1]
            for v in word[1:]:
                prod = algebra.mul(prod, args[v - 1])
        else:
            if identity is None:
                raise ValueError("constant term in an algebra without identity")
            prod = identity
        acc = algebra.add(acc, algebra.scale(field.from_fraction(coeff), prod))
    return acc


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of an identity check.

    identity is True/False when conclusive; None means the randomized mode
    found no counterexample, which is not a proof.  On False, witness holds
    the substituted tuple.
    """

    identity: bool | None
    conclusive: bool
    mode: str
    checked: int
    witness: tuple | None = None

    @property
    def holds(self) -> bool:
        return self.conclusive and bool(self.identity)


def is_identity(
    f: NCPoly,
    algebra: MatrixAlgebra,
    mode: str = "exhaustive_basis",
    trials: int = 200,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> IdentityVerdict:
    """Decide or probe whether f vanishes identically on the algebra.

    exhaustive_basis requires a multilinear f (basis substitution is then
    complete); exhaustive_all substitutes every tuple of algebra elements;
    randomized samples `trials` seeded tuples and is inconclusive unless a
    counterexample appears.
    """
    r = f.num_vars
    if mode == "exhaustive_basis":
        if not f.is_multilinear:
            raise ValueError("exhaustive_basis requires a multilinear polynomial")
        needed = algebra.dim**r if algebra.dim else 0
        if needed > budget:
            raise BudgetExceededError(needed, budget)
        checked = 0
        for tup in itertools.product(algebra.basis, repeat=r):
            checked += 1
            val = _evaluate_in(f, list(tup), algebra)
            if not algebra.is_zero(val):
                return IdentityVerdict(False, True, mode, checked, tup)
        return IdentityVerdict(True, True, mode, checked)
    if mode == "exhaustive_all":
        count = algebra.element_count()
        if count is None:
            raise ValueError("exhaustive_all needs a finite field")
        needed = count**r
        if needed > budget:
            raise BudgetExceededError(needed, budget)
        checked = 0
        for tup in itertools.product(list(algebra.elements()), repeat=r):
            checked += 1
            val = _evaluate_in(f, list(tup), algebra)
            if not algebra.is_zero(val):
                return IdentityVerdict(False, True, mode, checked, tup)
        return IdentityVerdict(True, True, mode, checked)
    if mode == "randomized":
        import random

        rng = random.Random(f"identity/{seed}")
        for i in range(trials):
            tup = tuple(algebra.random_element(rng) for _ in range(r))
            val = _evaluate_in(f, list(tup), algebra)
            if not algebra.is_zero(val):
                return IdentityVerdict(False, True, mode, i + 1, tup)
        return IdentityVerdict(None, False, mode, trials)
    raise ValueError(f"unknown mode {mode!r}")


# -- product identity checks on centralizer algebras ------------------------------


@dataclass(frozen=True)
class ProductCheckReport:
    """Result of verifying factor identities and the vanishing of their product."""

    profile: tuple[int, ...]
    target: str
    factor_verdicts: tuple[IdentityVerdict, ...]
    factors_ok: bool
    failing_factor: int | None
    product_vanishes: bool | None
    target_dim: int
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.factors_ok and bool(self.product_vanishes)

    def to_json_dict(self) -> dict:
        return {
            "profile": list(self.profile),
            "target": self.target,
            "factors_verified": self.factors_ok,
            "failing_factor": self.failing_factor,
            "product_vanishes": self.product_vanishes,
            "target_dim": self.target_dim,
            "ok": self.ok,
            "witness": self.witness,
        }


def _factor_mode(f: NCPoly) -> str:
    return "exhaustive_basis" if f.is_multilinear else "exhaustive_all"


def _factor_value_generators(f: NCPoly, algebra, budget: int) -> list:
    """Independent generators of the span of f's values on basis tuples.

    The product of factors with disjoint variables is multilinear in each
    factor's value, so checking products over spanning sets of the value
    spans is exactly exhaustive basis substitution of the product.
    """
    r = f.num_vars
    needed = algebra.dim**r if algebra.dim else 0
    if needed > budget:
        raise BudgetExceededError(needed, budget)
    reducer = SpanReducer(algebra.field)
    gens = []
    seen = set()
    for tup in itertools.product(algebra.basis, repeat=r):
        val = _evaluate_in(f, list(tup), algebra)
        key = algebra.flatten(val)
        if key in seen:
            continue
        seen.add(key)
        if reducer.add(key):
            gens.append(val)
    return gens


def _check_product_vanishes(factors: list[NCPoly], algebra, budget: int):
    if not all(f.is_multilinear for f in factors):
        # no factored shortcut: substitute every element tuple of the algebra
        verdict = is_identity(
            product_identity(factors), algebra, mode="exhaustive_all", budget=budget
        )
        witness = None
        if verdict.witness is not None:
            witness = " | ".join(algebra.describe(v) for v in verdict.witness)
        return bool(verdict.identity), witness
    gen_lists = []
    for f in factors:
        gen_lists.append(_factor_value_generators(f, algebra, budget))
    if any(not gens for gens in gen_lists):
        return True, None  # some factor vanishes identically
    combos = 1
    for gens in gen_lists:
        combos *= len(gens)
    if combos > budget:
        raise BudgetExceededError(combos, budget)
    for tup in itertools.product(*gen_lists):
        prod = tup[0]
        for v in tup[1:]:
            prod = algebra.mul(prod, v)
        if not algebra.is_zero(prod):
            return False, " | ".join(algebra.describe(v) for v in tup)
    return True, None


def _verify_factors(factors, algebra, budget):
    verdicts = []
    cache: dict[NCPoly, IdentityVerdict] = {}
    for f in factors:
        if f not in cache:
            cache[f] = is_identity(f, algebra, mode=_factor_mode(f), budget=budget)
        verdicts.append(cache[f])
    failing = next((i for i, v in enumerate(verdicts) if not v.holds), None)
    return tuple(verdicts), failing


def check_zero_level_product_identity(
    A: ExactMatrix,
    factors: list[NCPoly],
    budget: int = DEFAULT_BUDGET,
    max_dim: int = DEFAULT_MAX_DIM,
) -> ProductCheckReport:
    """Verify that a product of residue-algebra identities kills Cen0(A).

    A must be nilpotent with index n and `factors` must hold n polynomials,
    each an identity of the zero-level residue algebra with opposite
    multiplication (this precondition is machine-checked); the product with
    disjointly renamed variables is then checked to vanish on Cen0(A) by
    exhaustive multilinear basis substitution.
    """
    sizes = tuple(rank_partition(A))
    n = sizes[0] if sizes else 0
    if len(factors) != n:
        raise ValueError(f"need exactly {n} factors (the nilpotency index), got {len(factors)}")
    profile = BlockProfile(sizes, A.field)
    walg = pattern_algebra(
        A.field, profile.m, zero_level_residue(profile).positions, OPPOSITE
    )
    verdicts, failing = _verify_factors(factors, walg, budget)
    if failing is not None:
        return ProductCheckReport(
            sizes, "cen0", verdicts, False, failing, None, 0,
            witness=_witness_text(verdicts[failing], walg),
        )
    target = algebra_from_basis(A.field, cen0_basis(A, max_dim), STANDARD)
    vanishes, witness = _check_product_vanishes(factors, target, budget)
    return ProductCheckReport(
        sizes, "cen0", verdicts, True, None, vanishes, target.dim, witness
    )


def check_quotient_product_identity(
    A: ExactMatrix,
    factors: list[NCPoly],
    budget: int = DEFAULT_BUDGET,
) -> ProductCheckReport:
    """Verify that a product of identities kills the factor Cen(A)/Cen0(A).

    A must be nilpotent with index n >= 2 and `factors` must hold n - 1
    polynomials, each an identity of the constant-term residue of the
    centralizer model with opposite multiplication; the product is checked
    to vanish on the coset model of the factor algebra (an empty product is
    rejected as ill-posed for n = 1).
    """
    sizes = tuple(rank_partition(A))
    n = sizes[0] if sizes else 0
    if n < 2:
        raise ValueError(
            "nilpotency index 1 leaves an empty product, which is ill-posed; "
            "nothing to check for the factor algebra"
        )
    if len(factors) != n - 1:
        raise ValueError(f"need exactly {n - 1} factors (index - 1), got {len(factors)}")
    profile = BlockProfile(sizes, A.field)
    ualg = pattern_algebra(
        A.field, profile.m, centralizer_residue(profile).positions, OPPOSITE
    )
    verdicts, failing = _verify_factors(factors, ualg, budget)
    if failing is not None:
        return ProductCheckReport(
            sizes, "quotient", verdicts, False, failing, None, 0,
            witness=_witness_text(verdicts[failing], ualg),
        )
    quotient = QuotientModel(profile, opposite=True)
    vanishes, witness = _check_product_vanishes(factors, quotient, budget)
    return ProductCheckReport(
        sizes, "quotient", verdicts, True, None, vanishes,
        model_dims(profile).quotient_dim, witness,
    )


def _witness_text(verdict: IdentityVerdict, algebra) -> str | None:
    if verdict.witness is None:
        return None
    return " | ".join(algebra.describe(v) for v in verdict.witness)


# -- default factor choices ----------------------------------------------------------


def default_zero_level_factor(profile: BlockProfile) -> NCPoly:
    """A shipped identity of the zero-level residue algebra (verified at use).

    The residue pattern is supported on the t columns of height-1 blocks;
    modulo its square-zero radical it is a full t x t matrix algebra, so the
    standard polynomial s_{2t} kills the quotient and a product of two
    copies kills the pattern itself (one copy suffices when the radical is
    trivial, i.e. t = m; for t = 0 the algebra is zero and anything works).
    """
    t = sum(1 for k in profile.sizes if k == 1)
    if t == 0:
        return commutator()
    base = standard_polynomial(2 * t)
    if t == profile.m:
        return base
    return product_identity([base, base])


def default_quotient_factor(profile: BlockProfile) -> NCPoly:
    """A shipped identity of the centralizer residue algebra (verified at use).

    That algebra is block upper triangular with full diagonal blocks of
    sizes given by the multiplicities of the distinct block heights >= 2,
    so a product of the standard polynomials s_{2d} over the diagonal
    blocks vanishes on it.
    """
    mults: list[int] = []
    for k in sorted({k for k in profile.sizes if k >= 2}, reverse=True):
        mults.append(sum(1 for s in profile.sizes if s == k))
    if not mults:
        return commutator()
    return product_identity([standard_polynomial(2 * d) for d in mults])
