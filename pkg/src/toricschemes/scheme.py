"""How properties of the base ring pass to the toric scheme over it.

Ring properties are tri-state: ``True``, ``False`` or ``None`` (unknown).
Connectives follow Kleene's three-valued logic, so an unknown input can
only ever produce unknown outputs, never a fabricated value.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .errors import InputError
from .fan import Fan, is_complete

FLAGS = ("is_zero", "reduced", "connected", "normal", "irreducible", "integral",
         "noetherian", "artinian", "equidimensional")


def t_not(a):
    return None if a is None else not a


def t_or(*xs):
    if any(x is True for x in xs):
        return True
    if all(x is False for x in xs):
        return False
    return None


def t_and(*xs):
    if any(x is False for x in xs):
        return False
    if all(x is True for x in xs):
        return True
    return None


def _tri(value, name):
    if value is None or value == "unknown":
        return None
    if isinstance(value, bool):
        return value
    raise InputError(f"{name} must be true, false or \"unknown\"")


@dataclass(frozen=True)
class RingDescriptor:
    """What is known about the base ring ``R``.

    Obvious implications are closed over at construction (an integral ring
    is reduced and irreducible, an Artinian ring is Noetherian, the zero ring
    is Noetherian and reduced but not irreducible); contradictory flags raise
    ``InputError``.  ``dim`` is the Krull dimension; the zero ring has no
    numeric dimension and ``dim`` must then be ``None``.
    """

    is_zero: bool | None = None
    reduced: bool | None = None
    connected: bool | None = None
    normal: bool | None = None
    irreducible: bool | None = None
    integral: bool | None = None
    noetherian: bool | None = None
    artinian: bool | None = None
    equidimensional: bool | None = None
    dim: int | None = None
    minimal_prime_count: int | None = None

    def __post_init__(self):
        s = {k: getattr(self, k) for k in FLAGS}

        def force(key, value):
            if s[key] is not None and s[key] != value:
                raise InputError(f"inconsistent ring descriptor: {key} must be {value}")
            s[key] = value

        for _ in range(2):
            if s["integral"]:
                force("reduced", True)
                force("irreducible", True)
                force("is_zero", False)
            if s["reduced"] is False or s["irreducible"] is False:
                force("integral", False)
            if s["artinian"]:
                force("noetherian", True)
            if s["noetherian"] is False:
                force("artinian", False)
            if s["is_zero"]:
                force("noetherian", True)
                force("artinian", True)
                force("reduced", True)
                force("irreducible", False)
                force("integral", False)
        for k, v in s.items():
            object.__setattr__(self, k, v)
        if self.is_zero and self.dim is not None:
            raise InputError("the zero ring has no numeric dimension")
        if self.artinian and self.dim not in (None, 0):
            raise InputError("an Artinian ring has dimension 0")
        if self.dim is not None and self.dim < 0:
            raise InputError("dimension must be nonnegative")

    @classmethod
    def integers(cls) -> RingDescriptor:
        return cls(is_zero=False, reduced=True, connected=True, normal=True, integral=True,
                   noetherian=True, artinian=False, equidimensional=True, dim=1,
                   minimal_prime_count=1)

    @classmethod
    def field(cls) -> RingDescriptor:
        return cls(is_zero=False, reduced=True, connected=True, normal=True, integral=True,
                   noetherian=True, artinian=True, equidimensional=True, dim=0,
                   minimal_prime_count=1)

    @classmethod
    def zero(cls) -> RingDescriptor:
        return cls(is_zero=True, connected=False, normal=True, equidimensional=True,
                   minimal_prime_count=0)

    @classmethod
    def from_json(cls, data: dict) -> RingDescriptor:
        unknown = set(data) - set(FLAGS) - {"dim", "minimal_prime_count"}
        if unknown:
            raise InputError(f"unknown ring descriptor fields {sorted(unknown)}")
        kw = {k: _tri(data.get(k), k) for k in FLAGS}
        for k in ("dim", "minimal_prime_count"):
            v = data.get(k)
            if v is not None and v != "unknown":
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InputError(f"{k} must be an integer or \"unknown\"")
                kw[k] = v
        return cls(**kw)

    def to_json(self) -> dict:
        return {k: ("unknown" if v is None else v) for k, v in asdict(self).items()}


@dataclass(frozen=True)
class SchemeReport:
    separated: bool | None
    quasicompact: bool | None
    flat: bool | None
    finite_presentation: bool | None
    faithfully_flat: bool | None
    proper: bool | None
    empty: bool | None
    reduced: bool | None
    connected: bool | None
    normal: bool | None
    irreducible: bool | None
    integral: bool | None
    noetherian: bool | None
    artinian: bool | None
    equidimensional: bool | None
    dim_lower: int | None
    dim_upper: int | None
    irreducible_component_count: int | None

    @property
    def dim(self):
        """The dimension when it is determined, else ``None``."""
        if self.dim_lower is not None and self.dim_lower == self.dim_upper:
            return self.dim_lower
        return None

    def to_json(self) -> dict:
        return {f.name: ("unknown" if getattr(self, f.name) is None else getattr(self, f.name))
                for f in fields(self)}


def scheme_property_report(f: Fan, r: RingDescriptor) -> SchemeReport:
    """Properties of ``X_f(R) -> Spec R`` deduced from the fan and what is known of ``R``.

    ``empty`` records whether the scheme is empty (no cones, or ``R = 0``);
    in that case no numeric dimension is reported.
    """
    no_cones = f.is_empty
    has_cones = not no_cones
    n = f.ambient_rank
    empty = t_or(no_cones, r.is_zero)

    dim_lower = dim_upper = None
    if has_cones and r.is_zero is False and r.dim is not None:
        if r.noetherian:
            dim_lower = dim_upper = r.dim + n
        else:
            dim_lower, dim_upper = r.dim + n, (n + 1) * r.dim + n

    # only asserted over a Noetherian base
    equidim = t_or(r.equidimensional, no_cones) if r.noetherian else None

    if no_cones:
        components = 0
    else:
        components = r.minimal_prime_count

    return SchemeReport(
        separated=True,
        quasicompact=True,
        flat=True,
        finite_presentation=True,
        faithfully_flat=t_or(has_cones, r.is_zero),
        proper=t_or(is_complete(f), no_cones, r.is_zero),
        empty=empty,
        reduced=t_or(r.reduced, no_cones),
        connected=t_or(r.connected, no_cones),
        normal=t_or(r.normal, no_cones),
        irreducible=t_and(r.irreducible, has_cones),
        integral=t_and(r.integral, has_cones),
        noetherian=t_or(r.noetherian, no_cones),
        artinian=t_or(t_and(r.artinian, n == 0), r.is_zero, no_cones),
        equidimensional=equidim,
        dim_lower=dim_lower,
        dim_upper=dim_upper,
        irreducible_component_count=components,
    )
