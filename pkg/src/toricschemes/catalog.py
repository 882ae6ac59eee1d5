"""The packaged fixture catalog and a runner that diffs computed values
against the expectations stored next to each fan."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .cohomology import (
    BaseRing,
    MonomialModule,
    cech_cohomology,
    local_cohomology,
    serre_grothendieck_check,
)
from .cox import SubgroupB, compare_chart_iso, cox_grading, irrelevant_ideal, is_big, is_small
from .errors import InputError, ToricError
from .fan import Fan, is_complete, is_full, is_simplicial
from .picard import picard_group
from .scheme import RingDescriptor, scheme_property_report


def catalog_dir() -> Path:
    return Path(str(resources.files("toricschemes") / "data" / "catalog"))


def load_fixture(name: str, directory=None) -> dict:
    path = Path(directory or catalog_dir()) / f"{name}.json"
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"no fixture named {name!r}") from None


def load_fan(name: str, directory=None) -> Fan:
    return Fan.from_json(load_fixture(name, directory)["fan"])


def parse_range(text: str) -> tuple:
    """``"a..b"`` or a single integer ``"a"`` to an inclusive ``(lo, hi)``."""
    lo, sep, hi = text.strip().partition("..")
    try:
        lo = int(lo)
        hi = int(hi) if sep else lo
    except ValueError:
        raise InputError(f"bad degree range {text!r}") from None
    if hi < lo:
        raise InputError(f"empty degree range {text!r}")
    return lo, hi


def _ring(name: str) -> RingDescriptor:
    if name == "integers":
        return RingDescriptor.integers()
    if name == "field":
        return RingDescriptor.field()
    if name == "zero":
        return RingDescriptor.zero()
    raise InputError(f"unknown ring {name!r}")


def _check_fixture(data: dict) -> list:
    """Return ``(key, expected, actual)`` triples for every mismatch."""
    exp = data.get("expected", {})
    diffs = []

    def cmp(key, expected, actual):
        if expected != actual:
            diffs.append((key, expected, actual))

    try:
        f = Fan.from_json(data["fan"])
    except ToricError as exc:
        cmp("error", exp.get("error"), exc.code)
        return diffs
    if "error" in exp:
        cmp("error", exp["error"], None)
        return diffs

    if "props" in exp:
        cmp("props", exp["props"], {"complete": is_complete(f), "full": is_full(f),
                                    "simplicial": is_simplicial(f)})
    for case in exp.get("scheme", []):
        rep = scheme_property_report(f, _ring(case["ring"]))
        for k in ("proper", "empty"):
            if k in case:
                cmp(f"scheme.{case['ring']}.{k}", case[k], getattr(rep, k))
        if "dim" in case:
            cmp(f"scheme.{case['ring']}.dim", case["dim"], rep.dim)
    if f.is_empty:
        return diffs

    g = cox_grading(f)
    if "class_group" in exp:
        cmp("class_group", exp["class_group"], g.class_group.to_json())
    if "ray_degrees" in exp:
        cmp("ray_degrees", sorted(exp["ray_degrees"]),
            sorted(list(d.coords) for d in g.ray_degrees))
    if "irrelevant" in exp:
        cmp("irrelevant", sorted(exp["irrelevant"]), irrelevant_ideal(f).to_json())
    if "pic_index" in exp:
        cmp("pic_index", exp["pic_index"], picard_group(f, g).to_json()["index_in_A"])
    if "big_small" in exp:
        b = SubgroupB.whole(g)
        cmp("big_small", exp["big_small"], {"big": is_big(b, g), "small": is_small(b, f, g)})
    if "chart_iso" in exp:
        isos = [compare_chart_iso(f, g, i) for i in range(len(f.cones))]
        actual = "all" if all(isos) else "some_false"
        cmp("chart_iso", exp["chart_iso"], actual)
    for case in exp.get("cohomology", []):
        F = MonomialModule.from_json(f, case["module"], grading=g)
        base = BaseRing.parse(case["base"])
        label = f"cohomology{case['degree']}/{case['base']}"
        rep = cech_cohomology(F, case["degree"], base)
        cmp(label + ".H", case["H"], [d.rank for d in rep.sheaf])
        if "local" in case:
            rep = local_cohomology(F, case["degree"], base)
            cmp(label + ".local", case["local"], [d.rank for d in rep.local])
    for case in exp.get("sgcheck", []):
        F = MonomialModule.from_json(f, case["module"], grading=g)
        lo, hi = parse_range(case["degrees"])
        rep = serre_grothendieck_check(F, range(lo, hi + 1), BaseRing.parse(case["base"]))
        cmp(f"sgcheck{case['degrees']}/{case['base']}", True, rep.all_pass)
    return diffs


def catalog_run(directory=None) -> dict:
    """Run every fixture in ``directory`` (default: the packaged catalog).

    Raises ``InputError`` when the directory holds no fixtures.
    """
    d = Path(directory or catalog_dir())
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if not files:
        raise InputError(f"no fixtures found in {d}")
    results = {}
    for path in files:
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path.name}: {exc}") from None
        try:
            diffs = _check_fixture(data)
        except ToricError as exc:
            diffs = [("exception", None, f"{exc.code}: {exc.detail}")]
        results[data.get("name", path.stem)] = [
            {"key": k, "expected": e, "actual": a} for k, e, a in diffs]
    return {"all_pass": not any(results.values()), "fixtures": results}
