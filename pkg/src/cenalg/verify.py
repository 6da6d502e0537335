"""Seeded verification suites over randomized inputs.

Every suite is deterministic in its seed: each trial draws from its own
Random instance seeded by a stable string (seed, suite, field, size, trial
index), so runs are reproducible and trials are independent; results do not
depend on execution order, which also keeps parallel execution safe.
Nilpotent inputs are built by conjugating a canonical block-shift matrix
with a rejection-sampled random invertible matrix; general inputs are
uniform entrywise (integers in [-3, 3] over the rationals).
"""

import random
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache

from .fields import Field, PrimeField, QQ, field_from_name
from .linalg import (
    ExactMatrix,
    Subspace,
    direct_sum_check,
    format_matrix,
    image_basis,
    kernel_basis,
    rank,
    subspace_leq,
)
from .jordan import (
    fitting_decomposition,
    jordan_base,
    rank_partition,
    verify_fitting,
    verify_jordan_base,
)
from .centralizer import (
    cen0_basis,
    cen_basis,
    cen0_containment,
    check_dim_formula,
    double_zero_centralizer_check,
    lcen_basis,
    matrix_span,
)
from .models import (
    CEN_MODEL,
    TRUNCATION,
    ZERO_LEVEL,
    BlockProfile,
    CoefficientVector,
    TruncPolyMatrix,
    cen_model_basis,
    chain_combination,
    induced_endomorphism,
    membership,
    model_dims,
    poly_matrix_mul,
    residue_projection,
    zero_level_model_basis,
    centralizer_residue,
    zero_level_residue,
)
from .identities import (
    check_quotient_product_identity,
    check_zero_level_product_identity,
    default_quotient_factor,
    default_zero_level_factor,
)


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: int = 0
    witnesses: list = dataclass_field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.total - self.failures

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: dict | None = None):
        self.total += 1
        if not ok:
            self.failures += 1
            if witness is not None and len(self.witnesses) < 10:
                self.witnesses.append(witness)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.name,
            "total": self.total,
            "passed": self.passed,
            "failures": self.failures,
            "ok": self.ok,
            "witnesses": self.witnesses,
        }


# -- seeded generators ---------------------------------------------------------


def trial_rng(seed: int, *path) -> random.Random:
    return random.Random(":".join([str(seed)] + [str(p) for p in path]))


def random_matrix(field: Field, n: int, rng: random.Random) -> ExactMatrix:
    return ExactMatrix(field, [[field.random(rng) for _ in range(n)] for _ in range(n)], n)


def random_invertible(field: Field, n: int, rng: random.Random) -> ExactMatrix:
    while True:
        S = random_matrix(field, n, rng)
        if rank(S) == n:
            return S


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[tuple[int, ...], ...]:
    """All weakly decreasing positive partitions of n."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining: int, maximum: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for k in range(min(remaining, maximum), 0, -1):
            rec(remaining - k, k, prefix + (k,))

    rec(n, n, ())
    return tuple(out)


def random_nilpotent(field: Field, n: int, rng: random.Random) -> ExactMatrix:
    """Conjugate of a canonical block-shift matrix by a random invertible S."""
    from .linalg import inverse

    sizes = rng.choice(partitions_of(n))
    canonical = BlockProfile(sizes, field).canonical_nilpotent() if sizes else ExactMatrix.zeros(field, n, n)
    S = random_invertible(field, n, rng)
    return S @ canonical @ inverse(S)


def random_poly(field: Field, rng: random.Random, max_deg: int, valuation: int = 0) -> tuple:
    coeffs = [field.zero] * valuation + [field.random(rng) for _ in range(max_deg - valuation + 1)]
    return tuple(coeffs)


def random_poly_matrix(
    profile: BlockProfile, rng: random.Random, kind: str | None, max_deg: int
) -> list[list[tuple]]:
    """Full-degree m x m polynomial matrix entrywise inside the given pattern."""
    field = profile.field
    out = []
    for d in range(profile.m):
        row = []
        for g in range(profile.m):
            val = profile.required_valuation(d, g, kind) if kind else 0
            row.append(random_poly(field, rng, max(val, max_deg), val) if val <= max_deg else ())
        out.append(row)
    return out


def random_trunc_in(
    profile: BlockProfile, rng: random.Random, kind: str, max_deg: int | None = None
) -> TruncPolyMatrix:
    md = max_deg if max_deg is not None else profile.n
    return TruncPolyMatrix.from_entries(profile, random_poly_matrix(profile, rng, kind, md))


def _all_profiles(max_total: int, field: Field) -> list[BlockProfile]:
    out = []
    for total in range(1, max_total + 1):
        for sizes in partitions_of(total):
            out.append(BlockProfile(sizes, field))
    return out


def _matrix_witness(**mats) -> dict:
    return {name: format_matrix(M) for name, M in mats.items()}


# -- suites -----------------------------------------------------------------------


def suite_dimformula(
    seed: int,
    trials: int = 500,
    rational_trials: int = 50,
    max_dim: int = 6,
    fields: tuple[str, ...] = ("Fp2", "Fp5", "Fp101", "Q"),
) -> SuiteResult:
    """dim Cen0(A) equals (dim ker A)^2 for random matrices of every size."""
    res = SuiteResult("dimformula")
    for fname in fields:
        fld = field_from_name(fname)
        count = rational_trials if fld == QQ else trials
        for n in range(1, max_dim + 1):
            for t in range(count):
                rng = trial_rng(seed, "dimformula", fname, n, t)
                A = random_matrix(fld, n, rng)
                r = check_dim_formula(A)
                res.record(r.ok, None if r.ok else _matrix_witness(A=A))
    return res


def suite_jordan(
    seed: int, trials: int = 200, max_dim: int = 6, fields: tuple[str, ...] = ("Fp3",)
) -> SuiteResult:
    """Chain bases: chain property, sizes match the rank oracle, kernel span."""
    res = SuiteResult("jordan")
    for fname in fields:
        fld = field_from_name(fname)
        for n in range(1, max_dim + 1):
            for t in range(trials):
                rng = trial_rng(seed, "jordan", fname, n, t)
                A = random_nilpotent(fld, n, rng)
                try:
                    jb = jordan_base(A)
                    ok = verify_jordan_base(A, jb) and sorted(jb.block_sizes) == sorted(
                        rank_partition(A)
                    )
                except Exception:
                    ok = False
                res.record(ok, None if ok else _matrix_witness(A=A))
    return res


def suite_fitting(
    seed: int, trials: int = 200, max_dim: int = 6, fields: tuple[str, ...] = ("Fp5",)
) -> SuiteResult:
    """Fitting split plus the annihilator dimension through the nilpotent part."""
    res = SuiteResult("fitting")
    for fname in fields:
        fld = field_from_name(fname)
        for n in range(1, max_dim + 1):
            for t in range(trials):
                rng = trial_rng(seed, "fitting", fname, n, t)
                A = random_matrix(fld, n, rng)
                try:
                    fd = fitting_decomposition(A)
                    ok = verify_fitting(A, fd)
                    # the annihilator is Hom(W1, ker A) in disguise
                    expected = fd.W1.dim * kernel_basis(A).dim
                    ok = ok and expected == len(cen0_basis(A))
                except Exception:
                    ok = False
                res.record(ok, None if ok else _matrix_witness(A=A))
    return res


def suite_doublezero(
    seed: int,
    trials: int = 500,
    forced_trials: int = 100,
    max_dim: int = 5,
    fields: tuple[str, ...] = ("Fp3",),
) -> SuiteResult:
    """Annihilator containment: direct test vs kernel/image criteria, both ways."""
    res = SuiteResult("doublezero")
    for fname in fields:
        fld = field_from_name(fname)
        for n in range(1, max_dim + 1):
            for t in range(trials + forced_trials):
                rng = trial_rng(seed, "doublezero", fname, n, t)
                A = random_matrix(fld, n, rng)
                if t >= trials:
                    # force ker A <= ker B and im B <= im A
                    B = A @ random_matrix(fld, n, rng) @ A
                else:
                    B = random_matrix(fld, n, rng)
                pair = cen0_containment(A, B)
                rep = double_zero_centralizer_check(A, B)
                ok = pair.agree and rep.equivalent and pair.direct == rep.cond1
                if t >= trials:
                    ok = ok and pair.criterion
                res.record(ok, None if ok else _matrix_witness(A=A, B=B))
    return res


def suite_model_map(
    seed: int,
    pair_trials: int = 100,
    kernel_trials: int = 100,
    max_total: int = 6,
    fields: tuple[str, ...] = ("Fp2", "Fp5"),
) -> SuiteResult:
    """The induced-endomorphism map: anti-multiplicativity, kernel, spans, dims."""
    res = SuiteResult("model_map")
    for fname in fields:
        fld = field_from_name(fname)
        for profile in _all_profiles(max_total, fld):
            base = profile.canonical_base()
            A = profile.canonical_nilpotent()
            tag = "-".join(str(k) for k in profile.sizes)

            for t in range(pair_trials):
                rng = trial_rng(seed, "model_map/pairs", fname, tag, t)
                P = random_trunc_in(profile, rng, CEN_MODEL)
                Q = random_trunc_in(profile, rng, CEN_MODEL)
                lhs = induced_endomorphism(P @ Q, base)
                rhs = induced_endomorphism(Q, base) @ induced_endomorphism(P, base)
                res.record(lhs == rhs, None if lhs == rhs else {"profile": tag, "trial": t})

            for t in range(kernel_trials):
                rng = trial_rng(seed, "model_map/kernel", fname, tag, t)
                kind = TRUNCATION if rng.random() < 0.5 else CEN_MODEL
                entries = random_poly_matrix(profile, rng, kind, profile.n + 1)
                P = TruncPolyMatrix.from_entries(profile, entries)
                vanishes = induced_endomorphism(P, base).is_zero()
                in_ideal = membership(profile, entries, TRUNCATION)
                res.record(
                    vanishes == in_ideal,
                    None if vanishes == in_ideal else {"profile": tag, "trial": t},
                )

            dims = model_dims(profile)
            n_amb = profile.dim
            cen = cen_basis(A)
            cen0 = cen0_basis(A)
            model_span = matrix_span(
                [induced_endomorphism(P, base) for P in cen_model_basis(profile)], n_amb, fld
            )
            zl_span = matrix_span(
                [induced_endomorphism(P, base) for P in zero_level_model_basis(profile)],
                n_amb,
                fld,
            )
            ok = (
                model_span == matrix_span(cen, n_amb, fld)
                and zl_span == matrix_span(cen0, n_amb, fld)
                and dims.cen_model_dim == len(cen)
                and dims.zero_level_dim == len(cen0)
                and dims.zero_level_dim == profile.m**2
            )
            res.record(ok, None if ok else {"profile": tag, "check": "spans"})
    return res


def suite_nilpotency(
    seed: int, trials: int = 100, max_total: int = 6, fields: tuple[str, ...] = ("Fp2",)
) -> SuiteResult:
    """Products of z-divisible matrices: n-fold into truncation, (n-1)-fold into zero-level."""
    res = SuiteResult("nilpotency")
    for fname in fields:
        fld = field_from_name(fname)
        for profile in _all_profiles(max_total, fld):
            tag = "-".join(str(k) for k in profile.sizes)
            n = profile.n
            for t in range(trials):
                rng = trial_rng(seed, "nilpotency", fname, tag, t)
                factors = [
                    [
                        [random_poly(fld, rng, n + 1, 1) for _ in range(profile.m)]
                        for _ in range(profile.m)
                    ]
                    for _ in range(n)
                ]
                full = factors[0]
                for f in factors[1:]:
                    full = poly_matrix_mul(fld, full, f)
                ok = membership(profile, full, TRUNCATION)
                if n >= 2:
                    head = factors[0]
                    for f in factors[1 : n - 1]:
                        head = poly_matrix_mul(fld, head, f)
                    ok = ok and membership(profile, head, ZERO_LEVEL)
                res.record(ok, None if ok else {"profile": tag, "trial": t})
    return res


def suite_quotients(
    seed: int, trials: int = 100, max_total: int = 6, fields: tuple[str, ...] = ("Fp2", "Fp5")
) -> SuiteResult:
    """Residue projections are linear and multiplicative; pattern dims match."""
    res = SuiteResult("quotients")
    for fname in fields:
        fld = field_from_name(fname)
        for profile in _all_profiles(max_total, fld):
            tag = "-".join(str(k) for k in profile.sizes)
            m = profile.m
            wdim = zero_level_residue(profile).dim
            udim = centralizer_residue(profile).dim
            ones = sum(1 for k in profile.sizes if k == 1)
            ok = wdim == m * ones and udim == sum(
                1
                for d in range(m)
                for g in range(m)
                if profile.sizes[d] >= profile.sizes[g] >= 2
            )
            res.record(ok, None if ok else {"profile": tag, "check": "dims"})
            for t in range(trials):
                rng = trial_rng(seed, "quotients", fname, tag, t)
                P = random_trunc_in(profile, rng, ZERO_LEVEL)
                Q = random_trunc_in(profile, rng, ZERO_LEVEL)
                c = fld.random(rng)
                ok = residue_projection(P @ Q, "zero_level") == residue_projection(
                    P, "zero_level"
                ) @ residue_projection(Q, "zero_level")
                ok = ok and residue_projection(P.scale(c) + Q, "zero_level") == (
                    residue_projection(P, "zero_level").scale(c)
                    + residue_projection(Q, "zero_level")
                )
                Pn = random_trunc_in(profile, rng, CEN_MODEL)
                Qn = random_trunc_in(profile, rng, CEN_MODEL)
                ok = ok and residue_projection(Pn @ Qn, "centralizer") == residue_projection(
                    Pn, "centralizer"
                ) @ residue_projection(Qn, "centralizer")
                ok = ok and residue_projection(Pn.scale(c) + Qn, "centralizer") == (
                    residue_projection(Pn, "centralizer").scale(c)
                    + residue_projection(Qn, "centralizer")
                )
                res.record(ok, None if ok else {"profile": tag, "trial": t})
    return res


PI_PROFILES = ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2, 1))


def suite_pi(
    seed: int,
    profiles: tuple[tuple[int, ...], ...] = PI_PROFILES,
    fields: tuple[str, ...] = ("Fp2",),
    budget: int = 10**6,
) -> SuiteResult:
    """Shipped identities are verified on the residues, then products vanish."""
    res = SuiteResult("pi")
    for fname in fields:
        fld = field_from_name(fname)
        for sizes in profiles:
            profile = BlockProfile(tuple(sizes), fld)
            A = profile.canonical_nilpotent()
            tag = "-".join(str(k) for k in sizes)
            n = profile.n
            rep = check_zero_level_product_identity(
                A, [default_zero_level_factor(profile)] * n, budget=budget
            )
            res.record(rep.ok, None if rep.ok else {"profile": tag, "report": rep.to_json_dict()})
            if n >= 2:
                rep = check_quotient_product_identity(
                    A, [default_quotient_factor(profile)] * (n - 1), budget=budget
                )
                res.record(
                    rep.ok, None if rep.ok else {"profile": tag, "report": rep.to_json_dict()}
                )
    return res


def suite_lcen(
    seed: int, trials: int = 50, max_dim: int = 5, fields: tuple[str, ...] = ("Fp3", "Q")
) -> SuiteResult:
    """dim LCen = dim Cen - dim Cen0, and the annihilator is an ideal of Cen."""
    res = SuiteResult("lcen")
    for fname in fields:
        fld = field_from_name(fname)
        count = max(1, trials // 5) if fld == QQ else trials
        for n in range(1, max_dim + 1):
            for t in range(count):
                rng = trial_rng(seed, "lcen", fname, n, t)
                A = random_matrix(fld, n, rng)
                cen = cen_basis(A)
                cen0 = cen0_basis(A)
                lc = lcen_basis(A)
                ok = len(lc) == len(cen) - len(cen0)
                cen0_span = matrix_span(cen0, n, fld)
                cen_span = matrix_span(cen, n, fld)
                for C in cen0:
                    if not ok:
                        break
                    ok = ok and cen0_span.contains(C.flatten())
                    for U in cen[: min(len(cen), 4)]:
                        UC, CU = U @ C, C @ U
                        ok = ok and cen0_span.contains(UC.flatten())
                        ok = ok and cen0_span.contains(CU.flatten())
                for C in cen0:
                    ok = ok and cen_span.contains(C.flatten())
                res.record(ok, None if ok else _matrix_witness(A=A))
    return res


SUITES = {
    "dimformula": suite_dimformula,
    "jordan": suite_jordan,
    "fitting": suite_fitting,
    "doublezero": suite_doublezero,
    "model_map": suite_model_map,
    "nilpotency": suite_nilpotency,
    "quotients": suite_quotients,
    "pi": suite_pi,
    "lcen": suite_lcen,
}


def run_suites(
    names: list[str] | None = None,
    seed: int = 0,
    trials: int | None = None,
    max_dim: int | None = None,
    fields: tuple[str, ...] | None = None,
    budget: int | None = None,
) -> list[SuiteResult]:
    """Run the selected suites (all by default) with optional overrides."""
    chosen = names or list(SUITES)
    results = []
    for name in chosen:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r} (have: {', '.join(sorted(SUITES))})")
        fn = SUITES[name]
        kwargs = {}
        import inspect

        params = inspect.signature(fn).parameters
        if trials is not None and "trials" in params:
            kwargs["trials"] = trials
        if trials is not None and "pair_trials" in params:
            kwargs["pair_trials"] = trials
            kwargs["kernel_trials"] = trials
        if max_dim is not None and "max_dim" in params:
            kwargs["max_dim"] = max_dim
        if max_dim is not None and "max_total" in params:
            kwargs["max_total"] = max_dim
        if fields is not None and "fields" in params:
            kwargs["fields"] = fields
        if budget is not None and "budget" in params:
            kwargs["budget"] = budget
        results.append(fn(seed, **kwargs))
    return results


def report_dict(results: list[SuiteResult], seed: int) -> dict:
    return {
        "schema": 1,
        "seed": seed,
        "ok": all(r.ok for r in results),
        "suites": [r.to_json_dict() for r in results],
    }
