"""Command-line front end.

Every verb prints exactly one JSON document with sorted keys.  Exit status
is 0 on success, 2 for malformed input and 3 when a mathematical
precondition fails; errors are reported as ``{"error": code, "detail": ...}``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from .catalog import catalog_dir, catalog_run, load_fixture, parse_range
from .cohomology import (
    BaseRing,
    MonomialModule,
    cech_cohomology,
    finiteness_probe,
    local_cohomology,
    saturate,
    serre_grothendieck_check,
)
from .cox import (
    MonomialIdeal,
    SubgroupB,
    chart_degree_zero,
    compare_chart_iso,
    cox_grading,
    irrelevant_ideal,
    is_big,
    is_small,
    multidegrees,
    restricted_irrelevant_ideal,
    restriction_exponent,
)
from .errors import InputError, PreconditionError, ToricError
from .fan import Fan, chart_presentation, is_complete, is_full, is_simplicial
from .lattice import INFINITE
from .picard import picard_group, verify_pic_properties
from .scheme import RingDescriptor, scheme_property_report

SAFE_INT = 2 ** 53


def canonical(obj):
    """Make ``obj`` JSON-ready: tuples become lists and integers beyond
    2^53 become tagged decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        if abs(obj) > SAFE_INT:
            return {"format": "bigint-string", "value": str(obj)}
        return obj
    if isinstance(obj, float):
        return "infinite" if obj == INFINITE else obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ": "), indent=2)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read_json(text: str):
    """Parse ``text`` as inline JSON if it looks like JSON, else as a path."""
    s = text.strip()
    if s[:1] in "[{":
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad inline JSON: {exc}") from None
    try:
        return json.loads(Path(text).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {text}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{text}: {exc}") from None


def _load_fan(arg: str) -> Fan:
    """A fan from a JSON file, or the name of a packaged fixture."""
    if not Path(arg).exists() and (catalog_dir() / f"{arg}.json").exists():
        data = load_fixture(arg)
    else:
        data = _read_json(arg)
    if isinstance(data, dict) and "fan" in data:
        data = data["fan"]
    if not isinstance(data, dict):
        raise InputError("fan JSON must be an object")
    return Fan.from_json(data)


def _load_ring(arg: str) -> RingDescriptor:
    named = {"integers": RingDescriptor.integers, "ZZ": RingDescriptor.integers,
             "field": RingDescriptor.field, "QQ": RingDescriptor.field,
             "zero": RingDescriptor.zero}
    if arg in named:
        return named[arg]()
    data = _read_json(arg)
    if not isinstance(data, dict):
        raise InputError("ring descriptor JSON must be an object")
    return RingDescriptor.from_json(data)


def _load_module(f: Fan, arg, grading, subgroup) -> MonomialModule:
    if arg is None:
        return MonomialModule.free(f, grading=grading, subgroup=subgroup)
    data = _read_json(arg)
    if not isinstance(data, dict):
        raise InputError("module JSON must be an object")
    return MonomialModule.from_json(f, data, grading=grading, subgroup=subgroup)


def _parse_degree(text: str) -> tuple:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad degree {text!r}") from None


def _degrees(grading, text: str) -> list:
    ranges = [parse_range(part) for part in text.split(",")]
    if len(ranges) != grading.class_group.free_rank:
        raise InputError(f"need one range per free coordinate ({grading.class_group.free_rank})")
    return multidegrees(grading, ranges)


def _base(args) -> BaseRing:
    if args.base == "Fp":
        return BaseRing("Fp", args.prime)
    return BaseRing.parse(args.base)


def _subgroup(args, grading):
    if getattr(args, "subgroup", None) is None:
        return None
    gens = _read_json(args.subgroup)
    if not isinstance(gens, list):
        raise InputError("subgroup must be a JSON list of degrees")
    return SubgroupB.of(grading, gens)


def _box(args):
    if args.box is not None:
        return args.box
    env = os.environ.get("TORIC_BOX_RADIUS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"TORIC_BOX_RADIUS={env!r} is not an integer") from None
    return None


# ---------------------------------------------------------------------------
# verbs


def cmd_fan_validate(args):
    f = _load_fan(args.fan)
    out = f.to_json()
    out.update(valid=True, cone_count=len(f.cones))
    return out


def cmd_fan_props(args):
    f = _load_fan(args.fan)
    return {"complete": is_complete(f), "full": is_full(f), "simplicial": is_simplicial(f)}


def cmd_scheme_report(args):
    return scheme_property_report(_load_fan(args.fan), _load_ring(args.ring)).to_json()


def cmd_cox_grading(args):
    return cox_grading(_load_fan(args.fan)).to_json()


def cmd_cox_irrelevant(args):
    f = _load_fan(args.fan)
    g = cox_grading(f)
    b = _subgroup(args, g)
    if b is None:
        return {"generators": irrelevant_ideal(f).to_json()}
    return {"generators": restricted_irrelevant_ideal(b, f, g).to_json(),
            "restriction_exponent": restriction_exponent(b, f, g)}


def cmd_cox_subgroup(args):
    f = _load_fan(args.fan)
    g = cox_grading(f)
    b = _subgroup(args, g) or SubgroupB.whole(g)
    big = is_big(b, g)
    return {"big": big, "small": is_small(b, f, g), "index": b.index(g),
            "restriction_exponent": restriction_exponent(b, f, g) if big else None}


def cmd_chart(args):
    f = _load_fan(args.fan)
    if args.cone.strip().startswith("["):
        i = f.cone_with_rays(_read_json(args.cone))
    else:
        try:
            i = int(args.cone)
        except ValueError:
            raise InputError(f"bad cone {args.cone!r}") from None
    if not 0 <= i < len(f.cones):
        raise InputError(f"cone index {i} out of range")
    g = cox_grading(f)
    p = chart_presentation(f, i, args.degree_bound)
    zero = chart_degree_zero(f, g, i)
    return {
        "cone_rays": sorted(f.cone_rays[i]),
        "monoid_basis": p.monoid_basis.elements,
        "units": p.monoid_basis.units,
        "relations": [list(r) for r in p.binomial_relations],
        "degree_bound": p.degree_bound,
        "cox_degree_zero": {"basis": zero.elements, "units": zero.units},
        "isomorphic": compare_chart_iso(f, g, i),
    }


def cmd_pic(args):
    f = _load_fan(args.fan)
    g = cox_grading(f)
    p = picard_group(f, g)
    out = p.to_json()
    out["properties"] = verify_pic_properties(f, g, p).to_json()
    return out


def _module_args(args):
    f = _load_fan(args.fan)
    g = cox_grading(f)
    b = _subgroup(args, g)
    return f, g, _load_module(f, args.module, g, b)


def cmd_cohomology(args):
    f, g, F = _module_args(args)
    return cech_cohomology(F, _parse_degree(args.degree), _base(args), _box(args)).to_json()


def cmd_localcoh(args):
    f, g, F = _module_args(args)
    return local_cohomology(F, _parse_degree(args.degree), _base(args), _box(args)).to_json()


def cmd_sgcheck(args):
    f, g, F = _module_args(args)
    degrees = _degrees(g, args.degrees)
    base, box = _base(args), _box(args)
    out = serre_grothendieck_check(F, degrees, base, box).to_json()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out["finiteness"] = finiteness_probe(F, degrees, base, box).to_json()
    return out


def cmd_saturate(args):
    f = _load_fan(args.fan)
    gens = _read_json(args.ideal)
    if isinstance(gens, dict):
        gens = gens.get("generators")
    if not isinstance(gens, list):
        raise InputError("ideal must be a JSON list of exponent vectors")
    a = MonomialIdeal(len(f.rays), gens)
    return {"generators": saturate(a, irrelevant_ideal(f)).to_json()}


def cmd_catalog_run(args):
    return catalog_run(args.dir)


VERBS = {
    "fan-validate": (cmd_fan_validate, "check a fan description"),
    "fan-props": (cmd_fan_props, "complete / full / simplicial"),
    "scheme-report": (cmd_scheme_report, "properties of the toric scheme over a ring"),
    "cox-grading": (cmd_cox_grading, "class group and degrees of the Cox variables"),
    "cox-irrelevant": (cmd_cox_irrelevant, "minimal generators of the irrelevant ideal"),
    "cox-subgroup": (cmd_cox_subgroup, "big / small tests for a subgroup of degrees"),
    "chart": (cmd_chart, "presentation of an affine chart"),
    "pic": (cmd_pic, "Picard group inside the class group"),
    "cohomology": (cmd_cohomology, "sheaf cohomology of a monomial module in one degree"),
    "localcoh": (cmd_localcoh, "local cohomology of a monomial module in one degree"),
    "sgcheck": (cmd_sgcheck, "compare sheaf and local cohomology over a degree range"),
    "saturate": (cmd_saturate, "saturate a monomial ideal by the irrelevant ideal"),
    "catalog-run": (cmd_catalog_run, "run the fixture catalog"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toric", description="Invariants of toric schemes from lattice fans.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, (_, help_text) in VERBS.items():
        s = sub.add_parser(verb, help=help_text)
        s.add_argument("--out", help="also write the JSON result to this file")
        if verb != "catalog-run":
            s.add_argument("--fan", required=True, help="fan JSON file or fixture name")
        if verb == "scheme-report":
            s.add_argument("--ring", default="integers",
                           help="ring descriptor JSON, or integers / field / zero")
        if verb in ("cox-irrelevant", "cox-subgroup", "cohomology", "localcoh", "sgcheck"):
            s.add_argument("--subgroup", "--gens", dest="subgroup",
                           help="JSON list of generators of B (default: all of A)")
        if verb == "chart":
            s.add_argument("--cone", required=True, help="cone index, or JSON list of ray indices")
            s.add_argument("--degree-bound", type=int, default=12)
        if verb in ("cohomology", "localcoh", "sgcheck"):
            s.add_argument("--module", help="module JSON (default: the Cox ring itself)")
            s.add_argument("--base", default="QQ", help="QQ, ZZ, Fp (with --prime) or F<p>")
            s.add_argument("--prime", type=int, default=2)
            s.add_argument("--box", type=int, help="search box radius")
        if verb in ("cohomology", "localcoh"):
            s.add_argument("--degree", required=True, help="comma-separated coordinates")
        if verb == "sgcheck":
            s.add_argument("--degrees", required=True, help="a..b per free coordinate, comma-separated")
        if verb == "saturate":
            s.add_argument("--ideal", required=True, help="JSON list of exponent vectors")
        if verb == "catalog-run":
            s.add_argument("--dir", help="fixture directory (default: packaged catalog)")
    return p


def _glue_values(argv) -> list:
    """Attach values such as ``-4..4`` to their flag so they are not read as options."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--degree", "--degrees"):
            out.append(f"{tok}={next(it, '')}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> tuple:
    """Execute one command; return ``(exit code, JSON text)``."""
    try:
        args = build_parser().parse_args(_glue_values(list(argv or [])))
        result = VERBS[args.verb][0](args)
        code = 0
        if args.verb == "catalog-run" and not result["all_pass"]:
            code = 1
    except InputError as exc:
        return 2, dumps({"error": exc.code, "detail": str(exc.detail)})
    except PreconditionError as exc:
        return 3, dumps({"error": exc.code, "detail": str(exc.detail)})
    except ToricError as exc:
        return 2, dumps({"error": exc.code, "detail": str(exc.detail)})
    text = dumps(result)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return code, text


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
