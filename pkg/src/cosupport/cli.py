"""Command-line interface.

    cosupport ring info <file>
    cosupport compute --set <kind> --route <route> [--prime <id>] --input <file>
    cosupport verify run --suite <ids|all> --seeds a..b --out <file>
    cosupport dvr demo <probe>
    cosupport dvr eval "<expr>" --set <kind>

Exit codes: 0 success, 1 property failure or route disagreement, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import dercat as dc
from . import dvr
from . import finmod as fm
from . import supports as sp
from . import verify as vf
from .dercat import Complex, ComplexError
from .finmod import ModuleError
from .finring import RingError, build_ring, ring_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUNDLES = ("Ass", "ass", "Coass", "coass")
SCALARS = ("depth", "width", "Ann")
SETS = sp.KINDS + BUNDLES + SCALARS
FUNCTORS = ("D_R", "D_m", "localize", "colocalize", "tilde")


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    ring: object
    ring_spec: object
    modules: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    compute: list = field(default_factory=list)
    suite: dict | None = None
    target: str | None = None

    def object(self, name=None) -> Complex:
        name = name or self.target
        if name is None:
            if self.complexes:
                name = list(self.complexes)[-1]
            elif self.modules:
                name = list(self.modules)[-1]
            else:
                raise ScenarioError("scenario defines no module or complex")
        if name in self.complexes:
            return self.complexes[name]
        if name in self.modules:
            return dc.concentrated(self.modules[name])
        raise ScenarioError(f"unknown object reference {name!r}")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def parse_scenario(path_or_data) -> Scenario:
    """Load and validate a scenario file (or an already-decoded dict)."""
    data = _load_json(path_or_data) if isinstance(path_or_data, str) else path_or_data
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    if "ring" not in data:
        raise ScenarioError("scenario needs a 'ring' entry")
    unknown = set(data) - {"ring", "modules", "complexes", "compute", "suite", "target"}
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    try:
        R = build_ring(data["ring"])
    except (RingError, KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f"ring: {e}") from e
    sc = Scenario(R, data["ring"], suite=data.get("suite"), target=data.get("target"))
    for name, pres in (data.get("modules") or {}).items():
        try:
            sc.modules[name] = fm.build_module(R, pres)
        except (ModuleError, KeyError, TypeError, ValueError, IndexError) as e:
            raise ScenarioError(f"module {name!r}: {e}") from e
    for name, entry in (data.get("complexes") or {}).items():
        sc.complexes[name] = _parse_complex(sc, name, entry)
    for i, req in enumerate(data.get("compute") or []):
        if not isinstance(req, dict) or "set" not in req:
            raise ScenarioError(f"compute[{i}] needs a 'set'")
        if req["set"] not in SETS:
            raise ScenarioError(f"compute[{i}]: unknown set {req['set']!r}")
        of = req.get("of")
        if of is not None and of not in sc.modules and of not in sc.complexes:
            raise ScenarioError(f"compute[{i}]: unknown object reference {of!r}")
        sc.compute.append(dict(req))
    if sc.target is not None and sc.target not in sc.modules and sc.target not in sc.complexes:
        raise ScenarioError(f"unknown target reference {sc.target!r}")
    return sc


def _parse_complex(sc: Scenario, name, entry) -> Complex:
    if not isinstance(entry, dict) or "modules" not in entry:
        raise ScenarioError(f"complex {name!r} needs 'modules'")
    mods = {}
    for deg, ref in entry["modules"].items():
        try:
            d = int(deg)
        except ValueError:
            raise ScenarioError(f"complex {name!r}: degree {deg!r} is not an integer") from None
        if isinstance(ref, str):
            if ref not in sc.modules:
                raise ScenarioError(f"complex {name!r} degree {d}: unknown module reference {ref!r}")
            mods[d] = sc.modules[ref]
        else:
            try:
                mods[d] = fm.build_module(sc.ring, ref) if "orders" not in ref else \
                    fm.module_from_json(sc.ring, ref)
            except (ModuleError, KeyError, TypeError, ValueError, IndexError) as e:
                raise ScenarioError(f"complex {name!r} degree {d}: {e}") from e
    maps = {}
    for deg, mat in (entry.get("maps") or {}).items():
        d = int(deg)
        if d not in mods or d - 1 not in mods:
            raise ScenarioError(f"complex {name!r}: map d_{d} needs modules in degrees {d} and {d - 1}")
        try:
            maps[d] = fm.ModuleMap(mods[d], mods[d - 1], mat)
        except (ModuleError, ValueError, IndexError, TypeError) as e:
            raise ScenarioError(f"complex {name!r}: map d_{d} at degree {d}: {e}") from e
    try:
        return Complex(sc.ring, mods, maps)
    except ComplexError as e:
        raise ScenarioError(f"complex {name!r}: {e}") from e


def _artifact(sc: Scenario, C: Complex, name="result") -> dict:
    """A scenario that parse_scenario reads back to the same complex."""
    return {"ring": sc.ring_spec if isinstance(sc.ring_spec, (str, dict)) else ring_to_json(sc.ring),
            "complexes": {name: C.to_json()}, "target": name}


# -- execution ---------------------------------------------------------------------------


def compute_one(sc: Scenario, req: dict) -> dict:
    """Evaluate one compute request; raises RouteDisagreement on mismatch."""
    C = sc.object(req.get("of"))
    apply = req.get("apply")
    R = sc.ring
    p = R.prime(_prime_key(req["prime"])) if req.get("prime") is not None else None
    if apply:
        if apply not in FUNCTORS:
            raise ScenarioError(f"unknown functor {apply!r}")
        if apply in ("D_m", "localize", "colocalize") and p is None:
            raise ScenarioError(f"{apply} needs --prime")
        C = dc.apply_duality(C, apply, p, route="literal" if apply == "D_R" else "char")
    kind = req["set"]
    route = req.get("route", "all")
    out = {"set": kind, "route": route, "object": req.get("of") or sc.target}
    if kind in sp.KINDS:
        if route == "all":
            s = sp.all_routes(C, kind)
        else:
            if route not in sp.ROUTES:
                raise ScenarioError(f"unknown route {route!r}")
            s = sp.support_set(C, kind, route)
        out["result"] = s.to_json()
        out["labels"] = s.labels()
        if p is not None:
            out["prime"] = p.label
            out["member"] = p in s
    elif kind in BUNDLES:
        b = sp.ass_coass(C, kind)
        out["result"] = b.primes.to_json()
        out["labels"] = b.primes.labels()
        out["elements"] = [R.fmt(x) for x in sorted(b.elements)]
    elif kind == "Ann":
        A = sp.ann_complex(C)
        out["labels"] = [A.label]
        out["result"] = {"generators": [list(g) for g in A.basis], "label": A.label}
    else:
        if p is None:
            raise ScenarioError(f"{kind} needs --prime")
        depth, width = sp.depth_width(C, p)
        val = depth if kind == "depth" else width
        out["prime"] = p.label
        out["labels"] = [str(_num(val))]
        out["result"] = {"value": _num(val)}
    if apply:
        out["artifact"] = _artifact(sc, C)
    return out


def _prime_key(x):
    if isinstance(x, int):
        return x
    s = str(x)
    return int(s) if s.isdigit() else s


def _num(v):
    if v == dc.INF:
        return "+inf"
    if v == -dc.INF:
        return "-inf"
    return int(v)


def _table(rows):
    out = []
    for r in rows:
        head = f"{r['set']:<8} route={r['route']:<13}"
        body = ", ".join(r["labels"]) if r["labels"] else "∅"
        line = f"{head} {{{body}}}" if r["set"] not in SCALARS else f"{head} {body}"
        if "prime" in r and "member" in r:
            line += f"   {r['prime']} ∈ set: {r['member']}"
        elif "prime" in r:
            line += f"   at {r['prime']}"
        prov = r.get("result", {}).get("provenance") if isinstance(r.get("result"), dict) else None
        if prov:
            line += "   [" + "; ".join(f"{k}: {v}" for k, v in prov.items()) + "]"
        out.append(line)
    return "\n".join(out)


# -- subcommands -------------------------------------------------------------------------


def cmd_ring_info(args, out):
    data = _load_json(args.file)
    spec = data.get("ring", data) if isinstance(data, dict) and "kind" not in data else data
    try:
        R = build_ring(spec)
    except (RingError, KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f"ring: {e}") from e
    info = {"name": R.name, "order": R.order, "additive_orders": list(R.orders),
            "local": R.is_local, "spectrum": [p.label for p in R.spectrum],
            "local_factors": [{"index": f.index, "idempotent": R.fmt(f.idempotent),
                               "order": f.ring.order, "prime": f.prime.label} for f in R.local_factors],
            "jacobson_radical": {"label": R.jacobson_radical.label, "size": R.jacobson_radical.size}}
    if not args.json:
        print(f"ring {R.name}: |R| = {R.order}, additive orders {list(R.orders)}", file=out)
        print(f"Spec R = Max R = {{{', '.join(info['spectrum'])}}}", file=out)
        for f in info["local_factors"]:
            print(f"  factor {f['index']}: e = {f['idempotent']}, |eR| = {f['order']}, prime {f['prime']}", file=out)
        print(f"J(R) = {info['jacobson_radical']['label']} (order {info['jacobson_radical']['size']})", file=out)
    print(json.dumps(info, ensure_ascii=False), file=out)
    return EXIT_OK


def cmd_compute(args, out):
    sc = parse_scenario(args.input)
    reqs = []
    if args.set:
        reqs.append({"set": args.set, "route": args.route, "prime": args.prime, "of": args.of,
                     "apply": args.apply})
    else:
        reqs = sc.compute
    if not reqs:
        raise ScenarioError("nothing to compute: pass --set or add a 'compute' list")
    rows = []
    try:
        for req in reqs:
            if req.get("set") not in SETS:
                raise ScenarioError(f"unknown set {req.get('set')!r}; expected one of {', '.join(SETS)}")
            rows.append(compute_one(sc, req))
    except sp.RouteDisagreement as e:
        payload = {"error": "route disagreement", "message": str(e),
                   "sets": {r: s.labels() for r, s in e.sets.items()},
                   "instance": _artifact(sc, sc.object(req.get("of")), "counterexample")}
        print(json.dumps(payload, ensure_ascii=False), file=out)
        return EXIT_FAIL
    except RingError as e:
        raise ScenarioError(str(e)) from e
    if args.format in ("table", "both"):
        print(_table(rows), file=out)
    if args.format in ("json", "both"):
        print(json.dumps({"results": rows}, ensure_ascii=False), file=out)
    return EXIT_OK


def cmd_verify_run(args, out):
    try:
        props = vf.resolve_properties(args.suite)
        seeds = vf.parse_seeds(args.seeds)
    except (KeyError, ValueError) as e:
        raise ScenarioError(e.args[0] if e.args else str(e)) from e
    if args.config:
        cfg = vf.SuiteConfig.from_json(_load_json(args.config))
    else:
        cfg = vf.SuiteConfig(properties=props, seeds=seeds, jobs=args.jobs, out=args.out,
                             profile=args.profile, append=not args.overwrite)
    try:
        res = vf.run_suite(cfg, stream=out if args.stream else None)
    except OSError as e:
        print(f"error: corpus write failed: {e}", file=sys.stderr)
        return EXIT_INPUT
    s = res.summary
    print(f"{'property':<22}{'pass':>6}{'fail':>6}{'flagged':>9}{'vacuous':>9}", file=out)
    for pid, c in s["per_property"].items():
        print(f"{pid:<22}{c['pass']:>6}{c['fail']:>6}{c['flagged']:>9}{c['vacuous']:>9}", file=out)
    if s["flagged_properties"]:
        print("flagged (literal minimal-cosupport probe class): " + ", ".join(s["flagged_properties"]), file=out)
    for pid, v in s["vacuity"].items():
        print(f"vacuity {pid}: {v:.1%}", file=out)
    print(json.dumps({"summary": {k: v for k, v in s.items() if k != "per_property"}}), file=out)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_dvr_demo(args, out):
    try:
        rep = dvr.dvr_demo(args.probe)
    except dvr.DVRError as e:
        raise ScenarioError(str(e)) from e
    if args.probe == "strictness":
        for row in rep["details"]["rows"]:
            print(row["display"], file=out)
    elif args.probe == "cor34":
        d = rep["details"]
        print(f"cosupp E = {{{', '.join(d['cosupp'])}}}; min cosupp H(E) = {{{', '.join(d['min_cosupp_H'])}}}", file=out)
        print(f"literal form holds: {d['literal_holds']}; min-min form holds: {d['minmin_holds']}", file=out)
    else:
        for row in rep["details"]["rows"]:
            print(f"{row['object']:<5} max supp = {row['max_supp']}  max cosupp = {row['max_cosupp']}  "
                  f"min cosupp = {row['min_cosupp']}  min coSupp = {row['min_coSupp']}", file=out)
    print(json.dumps(rep, ensure_ascii=False), file=out)
    return EXIT_OK if rep["verdict"] in ("pass", "flagged") else EXIT_FAIL


def cmd_dvr_eval(args, out):
    try:
        obj = dvr.parse(args.expr)
        if args.set == "dual":
            D = dvr.dvr_dual(obj)
            print(str(D), file=out)
            print(json.dumps({"expr": str(obj), "dual": str(D)}), file=out)
            return EXIT_OK
        s = dvr.dvr_support(obj, args.set)
    except dvr.DVRError as e:
        raise ScenarioError(str(e)) from e
    print(f"{args.set} {obj} = {{{', '.join(s.labels())}}}", file=out)
    print(json.dumps({"expr": str(obj), "set": args.set, "result": s.to_json()}, ensure_ascii=False), file=out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="cosupport", description="Supports and cosupports over finite rings.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    ring = sub.add_parser("ring", help="ring utilities")
    rs = ring.add_subparsers(dest="ring_cmd", required=True)
    ri = rs.add_parser("info", help="describe a ring (ring spec or scenario file)")
    ri.add_argument("file")
    ri.add_argument("--json", action="store_true", help="JSON only")
    ri.set_defaults(func=cmd_ring_info)

    cp = sub.add_parser("compute", help="compute a support-type set")
    cp.add_argument("--input", required=True)
    cp.add_argument("--set", choices=SETS)
    cp.add_argument("--route", default="all", choices=sp.ROUTES + ("all",))
    cp.add_argument("--prime")
    cp.add_argument("--of", help="module or complex name (default: the scenario target)")
    cp.add_argument("--apply", choices=FUNCTORS, help="apply a functor first and emit the artifact")
    cp.add_argument("--format", default="both", choices=("table", "json", "both"))
    cp.set_defaults(func=cmd_compute)

    ver = sub.add_parser("verify", help="property harness")
    vs = ver.add_subparsers(dest="verify_cmd", required=True)
    vr = vs.add_parser("run")
    vr.add_argument("--suite", default="all")
    vr.add_argument("--seeds", default="0..199")
    vr.add_argument("--out")
    vr.add_argument("--jobs", type=int, default=1)
    vr.add_argument("--profile", default="default", choices=sorted(vf.PROFILES))
    vr.add_argument("--config", help="JSON suite config (overrides the flags)")
    vr.add_argument("--overwrite", action="store_true", help="truncate --out instead of appending")
    vr.add_argument("--stream", action="store_true", help="also print every report line")
    vr.set_defaults(func=cmd_verify_run)

    dv = sub.add_parser("dvr", help="complete DVR layer")
    ds = dv.add_subparsers(dest="dvr_cmd", required=True)
    dd = ds.add_parser("demo")
    dd.add_argument("probe", choices=("strictness", "cor34", "maxmin"))
    dd.set_defaults(func=cmd_dvr_demo)
    de = ds.add_parser("eval")
    de.add_argument("expr")
    de.add_argument("--set", required=True, choices=dvr.DVR_KINDS + ("dual",))
    de.set_defaults(func=cmd_dvr_eval)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (ScenarioError, ComplexError, ModuleError, RingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
