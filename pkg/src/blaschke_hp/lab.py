"""Zero-sequence families, the all-functionals report and scaling sweeps."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import warnings
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .cone import DEFAULT_ALPHA, StolzAngle, cone_norm, in_stolz, shadow_halfwidth
from .core import BlaschkeProduct, ZeroList, make_product, preimages
from .dyadic import (DyadicSector, build_tree, corollary_F_sum, protas_dyadic_sum,
                     separation_constant, verbitskii_profile)
from .exceptions import (DepthWarning, DiskDomainError, EnclosureError, NumericalError,
                         ParameterError)
from .norms import (DEFAULT_CONFIG, QuadratureConfig, besov_norm, carleson_integral, hp_norm,
                    sublevel_enclosure, weak_hp_quasinorm)

SCHEMA_VERSION = 1
KINDS = ("radial_separated", "stolz_confined", "dyadic_pattern", "uniform_random",
         "single_zero_scaling")
# grid parameter -> scalar parameter it expands into
GRID_PARAMS = {"deltas": "delta", "depths": "depth", "ns": "n", "seeds": "seed"}
RNG_ALGORITHMS = ("philox",)
ALPHAS = (1.5, 2.0, 4.0)
LEVELS = (0.25, 0.5, 0.75)
# deepest level representable by 1 - 2^-j in double precision
_MAX_RADIAL_DEPTH = 52


def rng_from(seed: int, algorithm: str = "philox") -> np.random.Generator:
    """Counter-based generator, so instances are reproducible across platforms."""
    if algorithm not in RNG_ALGORITHMS:
        raise ParameterError(f"unknown RNG algorithm {algorithm!r}")
    return np.random.Generator(np.random.Philox(int(seed)))


# ---------------------------------------------------------------------------
# family specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Recipe for a zero list (or, with grid parameters, a family of them).

    Parameters by kind
    ------------------
    radial_separated : ``depth`` J, optional ``theta``
        ``z_j = (1 - 2^-j) e^{i theta}``, ``j = 1..J``.
    stolz_confined : ``beta``, ``counts`` (N_1, N_2, ...) or ``profile`` + ``depth``
        ``N_j`` points at modulus ``1 - 2^-j`` spread over 90% of the cone
        ``Gamma_beta(1)``. ``profile`` is one of ``one``, ``linear``, ``sqrt``
        for ``N_j = 1``, ``j`` and ``floor(2^(j/2))``.
    dyadic_pattern : ``cells`` [[level, index, count], ...] or ``levels`` + ``fill``
        Zeros at top-part centres; ``fill < 1`` keeps each sector of the
        listed levels with that probability.
    uniform_random : ``n``, ``r_max``
        Area-uniform points in ``|z| < r_max``.
    single_zero_scaling : ``delta``, ``multiplicity``, ``theta``
        One zero at ``(1 - delta) e^{i theta}``; ``delta = 1`` is the origin.

    Any of ``deltas``, ``depths``, ``ns``, ``seeds`` turns the spec into a
    grid; :meth:`members` expands it.
    """

    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    rng: str = "philox"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.rng not in RNG_ALGORITHMS:
            raise ParameterError(f"unknown RNG algorithm {self.rng!r}")

    @property
    def grid(self) -> Optional[tuple[str, list]]:
        for g in GRID_PARAMS:
            if g in self.params:
                return g, list(self.params[g])
        return None

    def members(self) -> list["FamilySpec"]:
        g = self.grid
        if g is None:
            return [self]
        name, values = g
        scalar = GRID_PARAMS[name]
        base = {k: v for k, v in self.params.items() if k != name}
        out = []
        for v in values:
            if scalar == "seed":
                out.append(replace(self, params=base, seed=int(v)))
            else:
                out.append(replace(self, params={**base, scalar: v}))
        return out

    def driver(self) -> float:
        """Value of the gridded parameter for a single member."""
        for scalar in ("delta", "depth", "n"):
            if scalar in self.params:
                return float(self.params[scalar])
        return float(self.seed)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": _jsonable(self.params), "seed": self.seed,
                "rng": self.rng}

    @classmethod
    def from_dict(cls, d) -> "FamilySpec":
        return cls(d["kind"], dict(d.get("params", {})), int(d.get("seed", 0)),
                   d.get("rng", "philox"))


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _radial_depth(J):
    J = int(J)
    if J < 1:
        raise ParameterError(f"depth must be >= 1, got {J}")
    if J > _MAX_RADIAL_DEPTH:
        raise DiskDomainError(f"1 - 2^-{J} rounds to the unit circle")
    return J


def stolz_counts(profile: str, depth: int) -> list[int]:
    """Per-level counts for the named profile, levels ``1..depth``."""
    js = range(1, _radial_depth(depth) + 1)
    if profile == "one":
        return [1 for _ in js]
    if profile == "linear":
        return list(js)
    if profile == "sqrt":
        return [int(math.floor(2.0 ** (j / 2))) for j in js]
    raise ParameterError(f"unknown Stolz profile {profile!r}")


def _gen_radial(p):
    J = _radial_depth(p.get("depth", 1))
    theta = float(p.get("theta", 0.0))
    r = 1.0 - 2.0 ** -np.arange(1, J + 1)
    return r * np.exp(1j * theta), None


def _gen_stolz(p):
    beta = float(p.get("beta", 2.0))
    if "counts" in p:
        counts = [int(c) for c in p["counts"]]
    else:
        counts = stolz_counts(p.get("profile", "one"), p.get("depth", 1))
    _radial_depth(len(counts))
    pts = []
    for j, N in enumerate(counts, start=1):
        if N < 0:
            raise ParameterError("counts must be nonnegative")
        if N == 0:
            continue
        r = 1.0 - 2.0 ** -j
        w = 0.9 * shadow_halfwidth(r, beta)
        th = np.zeros(1) if N == 1 else np.linspace(-w, w, N)
        pts.append(r * np.exp(1j * th))
    return (np.concatenate(pts) if pts else np.zeros(0, complex)), None


def _top_part_points(level, index, count):
    Q = DyadicSector(int(level), int(index))
    if count == 1:
        return np.array([Q.centre])
    ell = Q.length
    r = 1.0 - 0.75 * ell
    frac = (np.arange(count) + 1.0) / (count + 1.0)
    return r * np.exp(1j * (Q.index - 1 + frac) * 2 * np.pi * ell)


def _gen_dyadic(p, rng):
    pts = []
    if "cells" in p:
        for level, index, count in p["cells"]:
            if count > 0:
                pts.append(_top_part_points(level, index, int(count)))
    else:
        fill = float(p.get("fill", 1.0))
        for level in p.get("levels", [2]):
            n_sec = DyadicSector.count_at(int(level))
            keep = np.ones(n_sec, bool) if fill >= 1.0 else rng.random(n_sec) < fill
            for j in np.flatnonzero(keep) + 1:
                pts.append(_top_part_points(level, j, 1))
    return (np.concatenate(pts) if pts else np.zeros(0, complex)), None


def _gen_uniform(p, rng):
    n = int(p.get("n", 1))
    r_max = float(p.get("r_max", 0.99))
    if not 0.0 < r_max < 1.0:
        raise DiskDomainError(f"r_max must lie in (0, 1), got {r_max}")
    if n < 0:
        raise ParameterError("n must be nonnegative")
    u = rng.random((2, n))
    return r_max * np.sqrt(u[0]) * np.exp(2j * np.pi * u[1]), None


def _gen_single(p):
    delta = float(p.get("delta", 0.5))
    if not 0.0 < delta <= 1.0:
        raise DiskDomainError(f"delta must lie in (0, 1], got {delta}")
    m = int(p.get("multiplicity", 1))
    theta = float(p.get("theta", 0.0))
    return np.array([(1.0 - delta) * np.exp(1j * theta)]), np.array([m])


def generate(spec: FamilySpec) -> ZeroList:
    """Deterministic zero list for a single (non-grid) spec."""
    if spec.grid is not None:
        raise ParameterError("grid spec: call members() and generate each member")
    p = spec.params
    rng = rng_from(spec.seed, spec.rng)
    if spec.kind == "radial_separated":
        pts, mult = _gen_radial(p)
    elif spec.kind == "stolz_confined":
        pts, mult = _gen_stolz(p)
    elif spec.kind == "dyadic_pattern":
        pts, mult = _gen_dyadic(p, rng)
    elif spec.kind == "uniform_random":
        pts, mult = _gen_uniform(p, rng)
    else:
        pts, mult = _gen_single(p)
    if pts.size == 0:
        return ZeroList.empty()
    if np.any(np.abs(pts) >= 1.0):
        raise DiskDomainError("generated point on or outside the unit circle")
    if mult is None:
        return ZeroList.from_points(pts)
    return ZeroList(pts, mult)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def auto_config(degree: int, base: Optional[QuadratureConfig] = None) -> QuadratureConfig:
    """Scale the sublevel refinement depth down with the degree.

    Enclosure widths shrink like ``2^-depth`` while the work per level grows
    with the degree, so the depth is capped and ``rel_tol`` widened to
    ``2^(1-depth)`` to match.
    """
    base = DEFAULT_CONFIG if base is None else base
    if degree <= 8:
        depth = base.refinement_depth
    elif degree <= 64:
        depth = min(base.refinement_depth, 10)
    elif degree <= 256:
        depth = min(base.refinement_depth, 8)
    else:
        depth = min(base.refinement_depth, 6)
    return replace(base, refinement_depth=depth,
                   rel_tol=max(base.rel_tol, 2.0 ** (1 - depth)))


@dataclass
class FunctionalReport:
    """Every functional of one zero list at one parameter set."""

    degree: int
    p: float
    alpha: float
    c: float
    hp_norm: float = float("nan")
    sublevel_Ic: float = float("nan")
    sublevel_width: float = float("nan")
    cone_norm: float = float("nan")
    besov_q1_sp: float = float("nan")
    carleson_log: float = float("nan")
    protas_dyadic_sum: float = float("nan")
    corollary_F_sum: float = float("nan")
    verbitskii_sum: Optional[float] = None
    weak_hp: float = float("nan")
    errors: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name not in ("errors", "flags", "config")]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d) -> "FunctionalReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    def csv_header(self) -> str:
        return ",".join(["schema_version"] + self.columns()) + "\n"

    def csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [SCHEMA_VERSION] + [getattr(self, c) for c in self.columns()])
        return buf.getvalue()

    def value(self, name: str) -> float:
        """A stored field, or a derived quantity such as ``hp_norm_p``."""
        if name == "hp_norm_p":
            return self.hp_norm ** self.p
        if name == "cone_norm_p":
            return self.cone_norm ** self.p
        if name == "sublevel_root":
            return self.sublevel_Ic ** (1.0 / self.p)
        v = getattr(self, name)
        return float("nan") if v is None else float(v)


FUNCTIONALS = ("hp_norm", "hp_norm_p", "sublevel_Ic", "sublevel_root", "cone_norm",
               "cone_norm_p", "besov_q1_sp", "carleson_log", "protas_dyadic_sum",
               "corollary_F_sum", "verbitskii_sum", "weak_hp")


def _guard(rep, name, fn):
    try:
        return fn()
    except NumericalError as exc:
        rep.errors[name] = f"{type(exc).__name__}: {exc}"
        return float("nan")


def functional_report(zeros: ZeroList, p: float = 0.75, alpha: float = DEFAULT_ALPHA,
                      c: float = 0.5, cfg: Optional[QuadratureConfig] = None, *,
                      stolz_beta: Optional[float] = None, strict: bool = True,
                      max_level: int = 40) -> FunctionalReport:
    """Compute all functionals, recording numerical failures per field.

    Parameters
    ----------
    cfg : QuadratureConfig, optional
        Defaults to :func:`auto_config` for the degree.
    stolz_beta : float, optional
        When given, the zeros are checked to lie in ``Gamma_beta(1)`` and the
        level-count sum is reported.
    strict : bool
        Treat a sublevel enclosure wider than ``cfg.rel_tol`` as an error.
    """
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p!r}")
    if not 0.0 < c < 1.0:
        raise ParameterError(f"c must lie in (0, 1), got {c!r}")
    StolzAngle(0.0, alpha)
    cfg = auto_config(zeros.degree) if cfg is None else cfg
    B = make_product(zeros, allow_constant=True)
    rep = FunctionalReport(degree=zeros.degree, p=p, alpha=alpha, c=c, config=cfg.to_dict())
    if not 0.5 < p < 1.0:
        rep.flags.append("p outside (1/2, 1): equivalences not expected")

    rep.hp_norm = _guard(rep, "hp_norm", lambda: hp_norm(B, p, cfg))

    def _sub():
        enc = sublevel_enclosure(B, c, p, cfg)
        rep.sublevel_width = enc.width
        if strict and enc.width > cfg.rel_tol * enc.value:
            raise EnclosureError(f"enclosure width {enc.width:.3g} at value {enc.value:.3g}")
        return enc.value

    rep.sublevel_Ic = _guard(rep, "sublevel_Ic", _sub)
    rep.cone_norm = cone_norm(zeros, alpha, p)
    rep.besov_q1_sp = _guard(rep, "besov_q1_sp", lambda: besov_norm(B, 1.0, p, cfg))
    rep.carleson_log = _guard(rep, "carleson_log", lambda: carleson_integral(B, p, cfg))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DepthWarning)
        tree = build_tree(zeros, max_level)
    if any(issubclass(w.category, DepthWarning) for w in caught):
        rep.flags.append(f"{tree.deep} zero(s) below dyadic level {max_level}")
    rep.protas_dyadic_sum = protas_dyadic_sum(tree, p)
    rep.corollary_F_sum = corollary_F_sum(tree, p)
    if stolz_beta is not None:
        if zeros.degree and not np.all(in_stolz(zeros.points, StolzAngle(0.0, stolz_beta))):
            rep.flags.append(f"zeros not confined to the beta={stolz_beta} cone at 1")
        rep.verbitskii_sum = verbitskii_profile(zeros, p)[1]
    rep.weak_hp = _guard(rep, "weak_hp", lambda: weak_hp_quasinorm(B, p, cfg))
    return rep


def _stolz_beta_of(spec: FamilySpec) -> Optional[float]:
    if spec.kind == "stolz_confined":
        return float(spec.params.get("beta", 2.0))
    if spec.kind == "radial_separated":
        return DEFAULT_ALPHA
    return None


def member_report(spec: FamilySpec, p: float = 0.75, alpha: float = DEFAULT_ALPHA,
                  c: float = 0.5, cfg: Optional[QuadratureConfig] = None,
                  **kw) -> FunctionalReport:
    """:func:`functional_report` of a generated (single) spec."""
    zeros = generate(spec)
    return functional_report(zeros, p, alpha, c, cfg, stolz_beta=_stolz_beta_of(spec), **kw)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def fit_slope(x: Sequence[float], y: Sequence[float], *, min_points: int = 5,
              min_decades: float = 2.0) -> float:
    """Least-squares slope of ``log y`` against ``log x``.

    Raises
    ------
    ParameterError
        With fewer than ``min_points`` points, a span below ``min_decades``
        decades of ``x``, or nonpositive values.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < min_points:
        raise ParameterError(f"need at least {min_points} grid points, got {x.size}")
    if np.any(x <= 0) or np.any(~np.isfinite(y)) or np.any(y <= 0):
        raise ParameterError("log-log fit needs positive finite data")
    span = math.log10(x.max() / x.min())
    if span < min_decades:
        raise ParameterError(f"grid spans {span:.2f} decades, need {min_decades}")
    return float(stats.linregress(np.log(x), np.log(y)).slope)


@dataclass
class SweepReport:
    """Per-member reports with fitted slopes and ratio bands."""

    family: list
    drivers: list = field(default_factory=list)
    members: list = field(default_factory=list)
    slopes: dict = field(default_factory=dict)
    bands: dict = field(default_factory=dict)

    def series(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(self.drivers, dtype=float)
        y = np.array([m.value(name) for m in self.members])
        return x, y

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "family": self.family,
                "drivers": self.drivers, "members": [m.to_dict() for m in self.members],
                "slopes": self.slopes,
                "bands": {k: list(v) for k, v in self.bands.items()}}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["schema_version", "member", "driver"] + FunctionalReport.columns())
        for i, (x, m) in enumerate(zip(self.drivers, self.members)):
            w.writerow([SCHEMA_VERSION, i, x] + [getattr(m, c) for c in m.columns()])
        return buf.getvalue()

    def write_series(self, outdir, names: Sequence[str] = FUNCTIONALS) -> list[str]:
        """One ``x,y`` CSV per functional for external plotting."""
        os.makedirs(outdir, exist_ok=True)
        paths = []
        for name in names:
            x, y = self.series(name)
            path = os.path.join(outdir, f"series_{name}.csv")
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["schema_version", SCHEMA_VERSION])
                w.writerow(["x", name])
                for a, b in zip(x, y):
                    w.writerow([repr(float(a)), repr(float(b))])
            paths.append(path)
        return paths


def sweep(spec: FamilySpec, p: float = 0.75, alpha: float = DEFAULT_ALPHA, c: float = 0.5,
          cfg: Optional[QuadratureConfig] = None, functionals: Sequence[str] = (),
          **kw) -> SweepReport:
    """Reports for every member of a grid spec, with slopes for ``functionals``."""
    members = spec.members()
    rep = SweepReport(family=[spec.to_dict()])
    for m in members:
        rep.drivers.append(m.driver())
        rep.members.append(member_report(m, p, alpha, c, cfg, **kw))
    for name in functionals:
        x, y = rep.series(name)
        rep.slopes[name] = fit_slope(x, y)
    return rep


def sweep_exponent(spec: FamilySpec, functional_name: str, p: float = 0.75,
                   cfg: Optional[QuadratureConfig] = None, *, alpha: float = DEFAULT_ALPHA,
                   c: float = 0.5) -> float:
    """Log-log slope of one functional against the family's driving parameter.

    Only the requested functional is computed for each member.
    """
    if functional_name not in FUNCTIONALS:
        raise ParameterError(f"unknown functional {functional_name!r}; choose from {FUNCTIONALS}")
    members = spec.members()
    if len(members) < 5:
        raise ParameterError(f"need at least 5 family members, got {len(members)}")
    xs, ys = [], []
    for m in members:
        xs.append(m.driver())
        ys.append(single_functional(generate(m), functional_name, p, alpha, c, cfg))
    return fit_slope(xs, ys)


def single_functional(zeros: ZeroList, name: str, p: float, alpha: float = DEFAULT_ALPHA,
                      c: float = 0.5, cfg: Optional[QuadratureConfig] = None) -> float:
    """Value of one named functional (see ``FUNCTIONALS``); errors propagate."""
    cfg = auto_config(zeros.degree) if cfg is None else cfg
    B = make_product(zeros, allow_constant=True)
    if name in ("hp_norm", "hp_norm_p"):
        v = hp_norm(B, p, cfg)
        return v ** p if name == "hp_norm_p" else v
    if name in ("sublevel_Ic", "sublevel_root"):
        enc = sublevel_enclosure(B, c, p, cfg)
        if enc.width > cfg.rel_tol * enc.value:
            raise EnclosureError(f"enclosure width {enc.width:.3g} at value {enc.value:.3g}")
        return enc.value ** (1.0 / p) if name == "sublevel_root" else enc.value
    if name in ("cone_norm", "cone_norm_p"):
        v = cone_norm(zeros, alpha, p)
        return v ** p if name == "cone_norm_p" else v
    if name == "besov_q1_sp":
        return besov_norm(B, 1.0, p, cfg)
    if name == "carleson_log":
        return carleson_integral(B, p, cfg)
    if name == "weak_hp":
        return weak_hp_quasinorm(B, p, cfg)
    if name == "verbitskii_sum":
        return verbitskii_profile(zeros, p)[1]
    tree = build_tree(zeros, 40)
    if name == "protas_dyadic_sum":
        return protas_dyadic_sum(tree, p)
    return corollary_F_sum(tree, p)


def _band(values) -> tuple[float, float]:
    v = np.asarray([x for x in values if np.isfinite(x)], dtype=float)
    if v.size == 0:
        return (float("nan"), float("nan"))
    return (float(v.min()), float(v.max()))


def band_spread(band) -> float:
    """``max / min`` of a band."""
    lo, hi = band
    return hi / lo if lo > 0 else float("inf")


def theorem1_ratios(specs: Sequence[FamilySpec], p: float = 0.75, alpha: float = DEFAULT_ALPHA,
                    c: float = 0.5, cfg: Optional[QuadratureConfig] = None, *,
                    alphas: Sequence[float] = ALPHAS, levels: Sequence[float] = LEVELS,
                    strict: bool = False) -> SweepReport:
    """Ratio bands of ``I(c)^(1/p) / ||B'||_{H^p}`` and ``||F||_p / ||B'||_{H^p}``.

    Bands are also reported for each aperture in ``alphas`` and each level
    in ``levels``. Members are keyed by their position in the expanded list.
    """
    if not 0.5 < p < 1.0:
        raise ParameterError(f"ratio study needs p in (1/2, 1), got {p!r}")
    rep = SweepReport(family=[s.to_dict() for s in specs])
    ratios: dict[str, list] = {"I_over_hp": [], "F_over_hp": []}
    for a in alphas:
        ratios[f"F_over_hp[alpha={a:g}]"] = []
    for lev in levels:
        ratios[f"I_over_hp[c={lev:g}]"] = []
    for spec in specs:
        for m in spec.members():
            zeros = generate(m)
            mcfg = auto_config(zeros.degree) if cfg is None else cfg
            r = functional_report(zeros, p, alpha, c, mcfg, stolz_beta=_stolz_beta_of(m),
                                  strict=strict)
            rep.drivers.append(m.driver())
            rep.members.append(r)
            hp = r.hp_norm
            ratios["I_over_hp"].append(r.sublevel_Ic ** (1.0 / p) / hp)
            ratios["F_over_hp"].append(r.cone_norm / hp)
            for a in alphas:
                f = r.cone_norm if a == alpha else cone_norm(zeros, a, p)
                ratios[f"F_over_hp[alpha={a:g}]"].append(f / hp)
            B = make_product(zeros, allow_constant=True)
            for lev in levels:
                if lev == c:
                    val = r.sublevel_Ic
                else:
                    val = sublevel_enclosure(B, lev, p, mcfg).value
                ratios[f"I_over_hp[c={lev:g}]"].append(val ** (1.0 / p) / hp)
    rep.bands = {k: _band(v) for k, v in ratios.items()}
    return rep


# ---------------------------------------------------------------------------
# preimages
# ---------------------------------------------------------------------------

def preimage_sum(B: BlaschkeProduct, a: complex, p: float) -> tuple[float, np.ndarray]:
    """``sum_k (1 - |z_k(a)|)^(1-p)`` over the solutions of ``B(z) = a``.

    Returns the sum and the preimages.
    """
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p!r}")
    z = preimages(B, a)
    return math.fsum(((1.0 - np.abs(z)) ** (1.0 - p)).tolist()), z


def separation_of(spec: FamilySpec) -> float:
    """Separation constant of a generated spec (0 for fewer than two zeros)."""
    zeros = generate(spec)
    return separation_constant(zeros) if zeros.degree >= 2 else 0.0
