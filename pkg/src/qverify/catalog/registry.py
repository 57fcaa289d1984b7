"""The family table: every identity with its evaluators, parameters and grids."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Mapping

from ..errors import InvalidParams, NotFound, QVerifyError
from ..gsum import Affine, GParams, g_eval
from ..positivity import (
    TAGS, check_nonneg, enumerate_domain, in_domain, instance_generators, instance_params,
    is_member,
)
from ..qpoly import QLaurent
from ..transforms import KINDS, kernel, kernel_identity_sides
from . import polynomial as P
from . import series as S
from .records import ERROR, NEGATIVE, NONNEGATIVE, VerificationRecord, compare, elapsed_since

POLYNOMIAL = "polynomial"
SERIES = "series"
POSITIVITY = "positivity"

DEFAULT_TRUNCATION = 100


@dataclass(frozen=True)
class ParamSpec:
    """Integer parameter with inclusive bounds; bounds may name earlier parameters."""

    name: str
    lo: str | None = None
    hi: str | None = None

    def check(self, env: Mapping[str, int]) -> None:
        x = env[self.name]
        if self.lo is not None and x < Affine.parse(self.lo).eval(env):
            raise InvalidParams(f"{self.name}={x} below {self.lo}")
        if self.hi is not None and x > Affine.parse(self.hi).eval(env):
            raise InvalidParams(f"{self.name}={x} above {self.hi}")

    def describe(self) -> str:
        lo = "-inf" if self.lo is None else self.lo
        hi = "inf" if self.hi is None else self.hi
        return f"{lo}..{hi}"


Grid = Mapping[str, str] | Callable[[], list]


@dataclass(frozen=True)
class Family:
    id: str
    kind: str
    tag: str
    params: tuple[ParamSpec, ...]
    lhs: Callable
    rhs: Callable | None = None
    # further expressions that must equal the right side
    alts: tuple[tuple[str, Callable], ...] = ()
    smoke: Grid = field(default_factory=dict)
    full: Grid = field(default_factory=dict)
    constraint: Callable[[dict], bool] | None = None
    constraint_text: str | None = None
    smoke_truncation: int | None = None
    full_truncation: int | None = None
    products: tuple[int, ...] | None = None
    # series sides must have nonnegative integer coefficients
    combinatorial: bool = False
    aliases: tuple[str, ...] = ()

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def validate(self, p: Mapping[str, Any]) -> dict[str, int]:
        env = self.check_bounds(p)
        if not self.admits(env):
            raise InvalidParams(f"{self.id}: {self.constraint_text or 'constraint violated'}")
        return env

    def admits(self, env: Mapping[str, int]) -> bool:
        """Cross-parameter domain restriction (bounds are checked separately)."""
        return self.constraint is None or bool(self.constraint(dict(env)))

    def check_bounds(self, p: Mapping[str, Any]) -> dict[str, int]:
        missing = [n for n in self.param_names if n not in p]
        if missing:
            raise InvalidParams(f"{self.id}: missing parameters {missing}")
        extra = sorted(set(p) - set(self.param_names))
        if extra:
            raise InvalidParams(f"{self.id}: unknown parameters {extra}")
        env = {}
        for spec in self.params:
            x = p[spec.name]
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidParams(f"{self.id}: {spec.name} must be an integer")
            env[spec.name] = x
        for spec in self.params:
            spec.check(env)
        return env

    def grid(self, level: str = "smoke") -> list[dict[str, int]]:
        g = self.full if level == "full" else self.smoke
        rows = g() if callable(g) else expand_grid(g)
        out = []
        for row in rows:
            try:
                out.append(self.validate(row))
            except InvalidParams:
                continue
        return out

    def truncation(self, level: str = "smoke") -> int | None:
        if self.kind != SERIES:
            return None
        t = self.full_truncation if level == "full" else self.smoke_truncation
        return t or DEFAULT_TRUNCATION

    def metadata(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "kind": self.kind,
            "equation": self.tag,
            "params": {p.name: p.describe() for p in self.params},
        }
        if self.constraint_text:
            out["constraint"] = self.constraint_text
        if self.products:
            out["products"] = list(self.products)
        if self.aliases:
            out["aliases"] = list(self.aliases)
        return out


# -- grids -------------------------------------------------------------------

def parse_range(text: str) -> tuple[Affine, Affine]:
    """``"a..b"`` (inclusive) or a single value; bounds are affine forms."""
    text = str(text).strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        return Affine.parse(lo), Affine.parse(hi)
    except ValueError as exc:
        raise InvalidParams(f"bad range {text!r}: {exc}") from None


def expand_grid(ranges: Mapping[str, str]) -> Iterator[dict[str, int]]:
    """Cartesian grid in key order; later bounds may reference earlier keys."""
    names = list(ranges)
    parsed = [parse_range(ranges[n]) for n in names]

    def rec(k: int, env: dict[str, int]):
        if k == len(names):
            yield dict(env)
            return
        lo, hi = parsed[k]
        for x in range(lo.eval(env), hi.eval(env) + 1):
            env[names[k]] = x
            yield from rec(k + 1, env)
        env.pop(names[k], None)

    return rec(0, {})


def lemma_tuples(count: int = 200, seed: int = 51) -> list[dict[str, int]]:
    """Fixed-seed random tuples for the binomial-product summation lemma."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(dict(
            alpha=rng.randint(-3, 3), beta=rng.randint(-3, 3), j=rng.randint(-3, 3),
            m1=rng.randint(0, 6), m2=rng.randint(0, 6), M=rng.randint(0, 6),
        ))
    return out


# -- the table -----------------------------------------------------------------

def _pp(*specs) -> tuple[ParamSpec, ...]:
    return tuple(ParamSpec(*s) for s in specs)


V_I = _pp(("v", "2"), ("i", "1", "v"), ("L", "0"))
V_D = _pp(("v", "2"), ("D", "0", "v-1"), ("L", "0"))
ONLY_L = _pp(("L", "0"))
LM = _pp(("L", "0"), ("M", "0"))


def _closed(fn):
    return lambda p: fn(p["L"])


def _s3(fid, tag, spec, closed, alts=(), aliases=()):
    return Family(
        fid, POLYNOMIAL, tag, ONLY_L, P.s3_sum(spec), _closed(closed), tuple(alts),
        smoke={"L": "0..12"}, full={"L": "0..30"}, aliases=tuple(aliases),
    )


def _kernel_family(kind: str) -> Family:
    def lhs(p):
        return kernel_identity_sides(kind, p["L"], p["a"])[0]

    def rhs(p):
        return kernel_identity_sides(kind, p["L"], p["a"])[1]

    eq = {"C": "(2.i1)", "W": "(2.i6d)", "O": "(2.i6f)"}[kind]
    return Family(
        f"KERNEL-{kind}", POLYNOMIAL, eq, _pp(("L", "0"), ("a", "-L", "L")), lhs, rhs,
        smoke={"L": "0..6", "a": "-L..L"}, full={"L": "0..12", "a": "-L..L"},
    )


def _kernel_pos(kind: str) -> Family:
    return Family(
        f"POS-KERNEL-{kind}", POSITIVITY, {"C": "(2.i2)", "W": "(2.i6e)", "O": "(2.i6g)"}[kind],
        _pp(("L", "0"), ("k", "0", "L")), lambda p: kernel(kind, p["L"], p["k"]),
        smoke={"L": "0..10", "k": "0..L"}, full={"L": "0..20", "k": "0..L"},
    )


def _g_of(p) -> QLaurent:
    return g_eval(GParams.from_scaled(p["N"], p["M"], p["alphaK"], p["betaK"], p["K"]))


def _cells_grid(cells_fn):
    def rows():
        return [dict(K=c.params.K, N=c.params.N, M=c.params.M,
                     alphaK=c.params.alpha_k, betaK=c.params.beta_k) for c in cells_fn()]
    return rows


def _conjecture_family() -> Family:
    return Family(
        "POS-C11", POSITIVITY, "Conjecture 1.1",
        _pp(("K", "1"), ("N", "0"), ("M", "0"), ("alphaK", "0"), ("betaK", "0")), _g_of,
        smoke=_cells_grid(lambda: enumerate_domain(3, 6, 6)),
        full=_cells_grid(lambda: enumerate_domain(6, 12, 12)),
        constraint=lambda e: in_domain(e["K"], e["N"], e["M"], e["alphaK"], e["betaK"]),
        constraint_text="(K, N, M, alphaK, betaK) inside the conjectured domain",
    )


_TAG_PARAMS = {
    "Eq1.2star": _pp(("v", "2"), ("i", "1", "v"), ("L", "0")),
    "Eq1.4": _pp(("v", "2"), ("D", "0", "v-1"), ("L", "D")),
    "Eq1.8": _pp(("v", "2"), ("D", "0", "v-1"), ("L", "D")),
    "T4.5": _pp(("v", "2"), ("n", "2"), ("L", "0")),
    "T4.6": _pp(("v", "2"), ("n", "1"), ("D", "0", "v-1"), ("L", "0")),
    "T4.7": _pp(("v", "2"), ("n", "1"), ("D", "0", "v-1"), ("L", "0")),
    "Eq4.15o": _pp(("v", "2"), ("L", "0")),
    "Eq4.16w": _pp(("v", "2"), ("L", "1")),
}


def _instance_family(tag: str) -> Family:
    def value(p):
        return g_eval(instance_params(tag, p["v"], p["L"], p.get("i"), p.get("D"), p.get("n")))

    def rows(L_hi, ns):
        def build():
            out = []
            for c in instance_generators(tag, (2, 3), range(L_hi + 1), ns):
                out.append(dict(c.origin))
            return out
        return build

    def constraint(p):
        try:
            g = instance_params(tag, p["v"], p["L"], p.get("i"), p.get("D"), p.get("n"))
        except InvalidParams:
            return False
        return is_member(g)

    return Family(
        f"POS-{tag}", POSITIVITY, tag, _TAG_PARAMS[tag], value,
        smoke=rows(6, (1, 2)), full=rows(10, (1, 2, 3)),
        constraint=constraint,
        constraint_text="instance must have N >= 0 and lie in the conjectured domain",
    )


def _series(fid, tag, params, lhs, rhs, smoke, full, **kw):
    return Family(
        fid, SERIES, tag, params, lhs, rhs, smoke=smoke, full=full,
        smoke_truncation=20, full_truncation=40, **kw,
    )


def _m20(r: int) -> Family:
    return Family(
        f"M20-{r}", SERIES, f"(3.{r})", (), lambda p, T, r=r: S.m20_lhs(r, T),
        lambda p, T, r=r: S.m20_rhs(r, T), smoke=lambda: [{}], full=lambda: [{}],
        smoke_truncation=30, full_truncation=60, products=S.m20_exponents(r),
        combinatorial=True,
    )


def _build() -> list[Family]:
    fam: list[Family] = [
        Family("FQ", POLYNOMIAL, "(1.2)", V_I, P.fq_lhs_p, P.fq_rhs,
               smoke={"v": "2..3", "i": "1..v", "L": "0..6"},
               full={"v": "2..4", "i": "1..v", "L": "0..12"}),
        Family("T11", POLYNOMIAL, "(1.3)", V_D, P.t11_lhs, P.t11_rhs,
               smoke={"v": "2..3", "D": "0..v-1", "L": "0..5"},
               full={"v": "2..3", "D": "0..v-1", "L": "0..8"}),
        Family("T11-ROUTE", POLYNOMIAL, "(1.3) via (2.i6e2i)/(2.i6e4i)", V_D, P.t11_lhs,
               P.t11_route,
               smoke={"v": "2..3", "D": "0..v-1", "L": "0..5"},
               full={"v": "2..3", "D": "0..v-1", "L": "0..8"}),
        Family("N16", POLYNOMIAL, "(1.6)", V_I, P.n16_lhs_p, P.n16_rhs,
               smoke={"v": "2..3", "i": "1..v", "L": "0..6"},
               full={"v": "2..4", "i": "1..v", "L": "0..10"}),
        Family("N17", POLYNOMIAL, "(1.7)", V_D, P.n17_lhs, P.n17_rhs,
               smoke={"v": "2..3", "D": "0..v-1", "L": "0..5"},
               full={"v": "2..3", "D": "0..v-1", "L": "0..8"}),
        Family("N17-ROUTE", POLYNOMIAL, "(1.7) via (2.i6e2i)/(2.i6e4i)", V_D, P.n17_lhs,
               P.n17_route,
               smoke={"v": "2..3", "D": "0..v-1", "L": "0..5"},
               full={"v": "2..3", "D": "0..v-1", "L": "0..8"}),
        _s3("S3-Ft", "(2.1)-(2.3)", P.SPEC_FT, P.ft_closed,
            alts=[("(2.1)", lambda p: P.q2_sum(p["L"], 1))], aliases=["S3-F̃"]),
        _s3("S3-I2", "(2.4)-(2.5)", P.SPEC_I2_EVEN, P.i2_closed,
            alts=[("(2.4)", lambda p: P.q2_sum(p["L"], 0)),
                  ("(2.5) odd top", P.s3_sum(P.SPEC_I2_ODD))]),
        _s3("S3-27", "(2.7)", P.SPEC_27, P.s27_closed),
        _s3("S3-A", "(2.9)=(2.13)", P.SPEC_A, P.a_closed),
        _s3("S3-B", "(2.10)=(2.14)", P.SPEC_B, P.b_closed),
        _s3("S3-X", "(2.16)=(2.18)", P.SPEC_X, P.x_closed),
        _s3("S3-Y", "(2.17)=(2.19)", P.SPEC_Y, P.y_closed),
        _s3("S3-Z", "(2.20)=(2.21)", P.SPEC_Z, P.z_closed,
            alts=[("X+q^(L+1)Y", lambda p: P.alt_sum(P.SPEC_X, p["L"])
                   + P.alt_sum(P.SPEC_Y, p["L"]).shift(p["L"] + 1))]),
        _s3("S3-C", "(2.22)=(2.23)", P.SPEC_C, P.c_closed,
            alts=[("(2.25)", lambda p: P.c_recurrence(p["L"]) if p["L"] >= 1
                   else P.alt_sum(P.SPEC_C, 0))]),
        Family("S3-212", POLYNOMIAL, "(2.12)", ONLY_L, lambda p: P.rel_212(p)[0],
               lambda p: P.rel_212(p)[1], smoke={"L": "0..12"}, full={"L": "0..30"}),
        Family("S3-28", POLYNOMIAL, "(2.8)", ONLY_L, lambda p: P.rel_28(p)[0],
               lambda p: P.rel_28(p)[1], smoke={"L": "0..12"}, full={"L": "0..30"}),
        Family("S3-215", POLYNOMIAL, "(2.15)", ONLY_L, lambda p: P.rel_215(p)[0],
               lambda p: P.rel_215(p)[2], (("X-q^L Y", lambda p: P.rel_215(p)[1]),),
               smoke={"L": "0..12"}, full={"L": "0..30"}),
        Family("S3-Prodinger", POLYNOMIAL, "(2.24)", _pp(("L", "1"), ("k", "0", "L")),
               P.prodinger_lhs, P.prodinger_rhs,
               smoke={"L": "1..10", "k": "0..L"}, full={"L": "1..20", "k": "0..L"}),
        Family("B5-L51", POLYNOMIAL, "Lemma 5.1",
               _pp(("alpha",), ("beta",), ("j",), ("m1", "0"), ("m2", "0"), ("M", "0")),
               P.lemma51_lhs, P.lemma51_rhs,
               smoke=lambda: lemma_tuples(40), full=lemma_tuples),
        Family("B5-L51c", POLYNOMIAL, "Lemma 5.1 with q^(-alpha beta)",
               _pp(("alpha",), ("beta",), ("j",), ("m1", "0"), ("m2", "0"), ("M", "0")),
               P.lemma51_lhs, P.lemma51_fixed_rhs,
               smoke=lambda: lemma_tuples(40), full=lemma_tuples,
               constraint=P.lemma51_holds, constraint_text="min(alpha+j, beta-j) <= 0"),
        Family("B5-T41", POLYNOMIAL, "(4.1)",
               _pp(("L", "0"), ("M", "0"), ("a", "1"), ("b", "0"), ("j",)),
               P.t41_lhs, P.t41_rhs,
               smoke={"a": "1..2", "b": "0..2", "j": "-2..2", "L": "0..4", "M": "0..4"},
               full={"a": "1..3", "b": "0..3", "j": "-3..3", "L": "0..6", "M": "0..6"}),
        Family("B5-T42", POLYNOMIAL, "(4.2)", _pp(("v", "1"), ("L", "0"), ("M", "0")),
               P.t42_lhs, P.t42_rhs,
               smoke={"v": "1..3", "L": "0..4", "M": "0..4"},
               full={"v": "1..4", "L": "0..6", "M": "0..6"}),
        Family("B5-T43a", POLYNOMIAL, "(4.5a)",
               _pp(("v", "1"), ("b", "0"), ("L", "0"), ("M", "0")), P.t43a_lhs, P.t43a_rhs,
               smoke={"v": "1..3", "b": "0..2", "L": "0..4", "M": "0..4"},
               full={"v": "1..4", "b": "0..3", "L": "0..6", "M": "0..6"}),
        Family("B5-T43b", POLYNOMIAL, "(4.6b)", _pp(("v", "1"), ("L", "0"), ("M", "0")),
               P.t43b_lhs, P.t43b_rhs,
               smoke={"v": "1..3", "L": "0..4", "M": "0..4"},
               full={"v": "1..4", "L": "0..6", "M": "0..6"}),
        Family("B5-47x", POLYNOMIAL, "(4.7x)", LM, P.burge47_lhs, P.burge_rhs,
               smoke={"L": "0..4", "M": "0..4"}, full={"L": "0..6", "M": "0..6"}),
        Family("B5-48y", POLYNOMIAL, "(4.8y)", LM, P.burge48_lhs, P.burge_rhs,
               smoke={"L": "0..4", "M": "0..4"}, full={"L": "0..6", "M": "0..6"}),
        Family("B5-L41", POLYNOMIAL, "(4.9B)", _pp(("i", "1", "2"), ("L", "0"), ("M", "0")),
               P.l41_lhs, P.l41_rhs,
               smoke={"i": "1..2", "L": "0..4", "M": "0..4"},
               full={"i": "1..2", "L": "0..6", "M": "0..6"}),
        Family("B5-410", POLYNOMIAL, "(4.10)", _pp(("v", "2"), ("L", "0"), ("M", "0")),
               P.b410_lhs, P.b410_rhs, (("second form", P.b410_alt),),
               smoke={"v": "2..3", "L": "0..4", "M": "0..4"},
               full={"v": "2..4", "L": "0..6", "M": "0..6"}),
        Family("B5-T44", POLYNOMIAL, "(4.11h)",
               _pp(("v", "2"), ("i", "1", "v"), ("L", "0"), ("M", "0")), P.t44_lhs, P.t44_rhs,
               smoke={"v": "2..3", "i": "1..v", "L": "0..4", "M": "0..4"},
               full={"v": "2..4", "i": "1..v", "L": "0..6", "M": "0..6"}),
        Family("B5-414c", POLYNOMIAL, "(4.14c)", _pp(("v", "2"), ("L", "0")),
               P.b414c_lhs, P.b414c_rhs,
               smoke={"v": "2..3", "L": "0..8"}, full={"v": "2..4", "L": "0..12"}),
        Family("B5-421", POLYNOMIAL, "(4.21)", _pp(("v", "2"), ("L", "0")),
               P.b421_lhs, P.b421_rhs,
               smoke={"v": "2..3", "L": "0..5"}, full={"v": "2..4", "L": "0..8"}),
        _series("SER-11", "(1.1)", _pp(("v", "2"), ("i", "1", "v")), S.ser11_lhs, S.ser11_rhs,
                {"v": "2..3", "i": "1..v"}, {"v": "2..3", "i": "1..v"}),
        _series("SER-AG", "Andrews-Gordon", _pp(("v", "2"), ("i", "1", "v")), S.ag_lhs,
                S.ag_rhs, {"v": "2..3", "i": "1..v"}, {"v": "2..3", "i": "1..v"}),
        _series("SER-15", "(1.5)", _pp(("v", "2"), ("D", "0", "v-1")), S.ser15_lhs,
                S.ser15_rhs, {"v": "2..3", "D": "0..v-1"}, {"v": "2..3", "D": "0..v-1"}),
        _series("SER-19", "(1.9)", _pp(("v", "2"), ("D", "0", "v-1")), S.ser19_lhs,
                S.ser19_rhs, {"v": "2..3", "D": "0..v-1"}, {"v": "2..3", "D": "0..v-1"}),
        _series("SER-422", "(4.22)", _pp(("v", "2"),), S.ser422_lhs, S.ser422_rhs,
                {"v": "2..3"}, {"v": "2..3"}),
        _series("SER-JTP", "(1.14JTP)", _pp(("sign", "-1", "1"), ("s", "0")), S.jtp_lhs,
                S.jtp_rhs, {"sign": "-1..1", "s": "1..2"}, {"sign": "-1..1", "s": "1..2"},
                constraint=lambda e: e["sign"] in (1, -1), constraint_text="sign is +1 or -1"),
    ]
    fam += [_m20(r) for r in range(1, 11)]
    fam += [_kernel_family(k) for k in KINDS]
    fam += [_kernel_pos(k) for k in KINDS]
    fam.append(_conjecture_family())
    fam += [_instance_family(t) for t in TAGS]
    return fam


_REGISTRY: list[Family] | None = None


def registry() -> list[Family]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build()
        ids = [f.id for f in _REGISTRY]
        assert len(ids) == len(set(ids)), "duplicate family id"
    return list(_REGISTRY)


def lookup(fid: str) -> Family:
    for f in registry():
        if f.id == fid or fid in f.aliases:
            return f
    raise NotFound(f"unknown family {fid!r}")


def _family(fid: str | Family) -> Family:
    return fid if isinstance(fid, Family) else lookup(fid)


def eval_lhs(fid: str | Family, p: Mapping[str, int], T: int | None = None):
    f = _family(fid)
    env = f.validate(p)
    if f.kind == SERIES:
        return f.lhs(env, T or DEFAULT_TRUNCATION)
    return f.lhs(env)


def eval_rhs(fid: str | Family, p: Mapping[str, int], T: int | None = None):
    f = _family(fid)
    if f.rhs is None:
        raise InvalidParams(f"{f.id} has no right side")
    env = f.validate(p)
    if f.kind == SERIES:
        return f.rhs(env, T or DEFAULT_TRUNCATION)
    return f.rhs(env)


def verify(fid: str | Family, p: Mapping[str, int], T: int | None = None) -> VerificationRecord:
    """Evaluate and compare; every failure becomes a verdict, never an exception."""
    t0 = time.perf_counter()
    try:
        f = _family(fid)
    except NotFound as exc:
        return VerificationRecord(str(fid), dict(p), ERROR, elapsed_ms=elapsed_since(t0),
                                  detail=str(exc))
    params = dict(p)
    trunc = (T or DEFAULT_TRUNCATION) if f.kind == SERIES else None
    try:
        if f.kind == POSITIVITY:
            value = eval_lhs(f, params)
            verdict = check_nonneg(value)
            if verdict.ok:
                return VerificationRecord(f.id, params, NONNEGATIVE,
                                          elapsed_ms=elapsed_since(t0))
            return VerificationRecord(f.id, params, NEGATIVE, verdict.exponent, verdict.value,
                                      elapsed_ms=elapsed_since(t0))
        lhs = eval_lhs(f, params, trunc)
        rhs = eval_rhs(f, params, trunc)
        rec = compare(f.id, params, lhs, rhs, t0, trunc)
        if rec.passed:
            for name, alt in f.alts:
                other = alt(f.validate(params))
                rec = compare(f.id, params, other, rhs, t0, trunc)
                if not rec.passed:
                    rec.detail = f"alternative form {name} differs"
                    break
        if rec.passed and f.combinatorial:
            for side in (lhs, rhs):
                if not side.is_integral() or any(c < 0 for c in side.coeffs):
                    rec.status = ERROR
                    rec.detail = "series coefficients are not nonnegative integers"
                    break
        return rec
    except QVerifyError as exc:
        return VerificationRecord(f.id, params, ERROR, truncation=trunc,
                                  elapsed_ms=elapsed_since(t0),
                                  detail=f"{type(exc).__name__}: {exc}")


def sort_key(rec: VerificationRecord) -> tuple:
    """Deterministic report order: family id, then parameter values in schema order."""
    return rec.family, tuple(rec.params.values())
