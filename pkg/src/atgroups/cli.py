"""Command-line front end.

    atgroups verify [--entry ID ...] [caps] [--format json] [--canonical] [--jobs N]
    atgroups analyze FILE.pgp
    atgroups scan DIR
    atgroups lemmas [--suite 2.1 ...]
    atgroups export DIR

Exit codes: 0 all pass, 1 some record failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import fnmatch
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import atlevel as at
from . import catalog
from . import iso
from . import lemmas as lem
from . import structure as st
from .engine import DEFAULT_MAX_COSETS, enumerate_group, log_p
from .errors import PGroupError, PresentationSyntaxError
from .iso import DEFAULT_ISO_CAP
from .presentation import load_presentation
from .structure import DEFAULT_LATTICE_CAP

ALL_IDS = ["thm3.1"] + catalog.ENTRY_IDS + ["mp-nm", "mp-nm1"]


@dataclass(frozen=True)
class Options:
    primes: tuple[int, ...] = (2, 3, 5)
    max_n: int = 4
    max_order: int = 6561
    lattice_cap: int = DEFAULT_LATTICE_CAP
    iso_cap: int = DEFAULT_ISO_CAP
    max_cosets: int = DEFAULT_MAX_COSETS

    @property
    def caps(self) -> catalog.Caps:
        return catalog.Caps(self.primes, self.max_n, self.max_order)

    def as_dict(self) -> dict:
        return {
            "p": list(self.primes),
            "max_n": self.max_n,
            "max_order": self.max_order,
            "lattice_cap": self.lattice_cap,
            "iso_cap": self.iso_cap,
            "max_cosets": self.max_cosets,
        }


@dataclass
class VerificationRecord:
    id: str
    params: dict
    computed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    verdict: str = "pass"
    reason: str | None = None
    time: float = 0.0

    def as_dict(self, canonical: bool = False) -> dict:
        out = {
            "id": self.id,
            "params": self.params,
            "computed": self.computed,
            "expected": self.expected,
            "checks": self.checks,
            "verdict": self.verdict,
            "reason": self.reason,
        }
        if not canonical:
            out["time"] = round(self.time, 3)
        return out


def _power(n: int, p: int) -> str:
    return f"{p}^{log_p(n, p)}"


def _expected_dict(exp: catalog.ExpectedClaims) -> dict:
    out = {"order": exp.order}
    if exp.at_level is not None:
        out["level"] = exp.at_level
    if exp.unique_a2:
        out["alpha2"] = 1
    if exp.k_generators is not None:
        out["k_generators"] = list(exp.k_generators)
    if exp.k_iso_label is not None:
        out["k_iso_label"] = exp.k_iso_label
    if exp.k_in_frattini is not None:
        out["k_in_frattini"] = exp.k_in_frattini
    return out


def verify_one(id: str, params: dict, opts: Options) -> VerificationRecord:
    """Build, enumerate and analyse one parameter tuple against its claims."""
    start = time.perf_counter()
    exp = catalog.expected(id, params)
    rec = VerificationRecord(id, dict(params), expected=_expected_dict(exp))
    try:
        G = enumerate_group(catalog.build(id, params), opts.max_cosets)
        rep = at.analyze(G, opts.lattice_cap)
        comp = rec.computed
        comp["order"] = G.order
        comp["level"] = rep.level
        comp["alpha1"] = rep.alpha1
        comp["alpha2"] = rep.alpha2
        K = rep.unique_a2
        checks = rec.checks
        checks["order"] = G.order == exp.order
        if exp.at_level is not None:
            checks["level"] = rep.level == exp.at_level
        if exp.unique_a2:
            checks["alpha2"] = rep.alpha2 == 1
        if K is not None:
            comp["k_order"] = K.order
            comp["k_in_frattini"] = bool(rep.a2_in_frattini)
            if exp.k_generators is not None:
                claimed = st.subgroup_from_words(G, list(exp.k_generators))
                comp["k_generators"] = list(exp.k_generators) if claimed == K else K.words()
                checks["k_generators"] = claimed == K
            if exp.k_iso_label is not None:
                if K.order > opts.iso_cap:
                    comp["k_iso_label"] = None
                    checks["k_iso_label"] = False
                    rec.reason = f"|K| = {K.order} exceeds --iso-cap {opts.iso_cap}"
                else:
                    comp["k_iso_label"] = iso.recognize(K, opts.iso_cap)
                    ok = iso.matches_label(K, exp.k_iso_label, opts.iso_cap)
                    checks["k_iso_label"] = ok
                    want = iso.label_order(exp.k_iso_label)
                    if not ok and want != K.order:
                        rec.reason = f"label {exp.k_iso_label} has order {want}, but |K| = {K.order}"
            if exp.k_in_frattini is not None:
                checks["k_in_frattini"] = bool(rep.a2_in_frattini) == exp.k_in_frattini
            if id == "thm3.1":
                checks["k_is_omega1_lift"] = K == at.omega1_lift(G)
        else:
            for key in ("k_generators", "k_iso_label", "k_in_frattini"):
                if getattr(exp, key) is not None:
                    checks[key] = False
            if id == "thm3.1":
                checks["k_is_omega1_lift"] = False
        failed = [k for k, ok in checks.items() if not ok]
        rec.verdict = "fail" if failed else "pass"
        if failed and rec.reason is None:
            rec.reason = "mismatch: " + ", ".join(failed)
    except PGroupError as exc:
        rec.verdict = "fail"
        rec.reason = f"{type(exc).__name__}: {exc}"
    rec.time = time.perf_counter() - start
    return rec


def _verify_task(task) -> VerificationRecord:
    id, params, opts = task
    return verify_one(id, params, opts)


def select_ids(patterns: list[str] | None) -> list[str]:
    if not patterns:
        return list(ALL_IDS)
    chosen = set()
    for pat in patterns:
        hits = [i for i in ALL_IDS if fnmatch.fnmatchcase(i, pat)]
        if not hits:
            raise ValueError(f"--entry {pat!r} matches no catalog id")
        chosen.update(hits)
    return [i for i in ALL_IDS if i in chosen]


def plan(ids: list[str], opts: Options) -> list[tuple[str, dict] | VerificationRecord]:
    """Work items in report order: (id, params) to run, or a ready skipped record."""
    items: list = []
    for id in ids:
        e = catalog.entry(id)
        domain = [prm for prm in e.domain(opts.caps) if not e.condition(prm)]
        if not domain:
            rec = VerificationRecord(id, {}, verdict="skipped")
            rec.reason = f"no admissible parameters for p in {list(opts.primes)}, n <= {opts.max_n}"
            items.append(rec)
            continue
        fits = [prm for prm in domain if e.claims(prm).order <= opts.max_order]
        if not fits:
            smallest = min(domain, key=lambda prm: e.claims(prm).order)
            order = e.claims(smallest).order
            p = smallest.get("p", 2)
            rec = VerificationRecord(id, {}, verdict="skipped")
            where = ", ".join(f"{k}={smallest[k]}" for k in sorted(smallest)) or "fixed group"
            rec.reason = f"smallest order in the grid is {_power(order, p)} ({where}) > --max-order {opts.max_order}"
            items.append(rec)
            continue
        for prm in domain:
            order = e.claims(prm).order
            p = prm.get("p", 2)
            if order > opts.max_order:
                rec = VerificationRecord(id, dict(prm), verdict="skipped")
                rec.reason = f"order {_power(order, p)} exceeds --max-order {opts.max_order}"
                items.append(rec)
            elif order > opts.lattice_cap:
                rec = VerificationRecord(id, dict(prm), verdict="skipped")
                rec.reason = f"order {_power(order, p)} exceeds --lattice-cap {opts.lattice_cap}"
                items.append(rec)
            else:
                items.append((id, dict(prm)))
    return items


def run_verify(ids: list[str], opts: Options, jobs: int = 1) -> list[VerificationRecord]:
    items = plan(ids, opts)
    tasks = [(it[0], it[1], opts) for it in items if not isinstance(it, VerificationRecord)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(_verify_task, tasks, chunksize=1))
    else:
        done = [_verify_task(t) for t in tasks]
    out, it = [], iter(done)
    for item in items:
        out.append(item if isinstance(item, VerificationRecord) else next(it))
    return out


def _params_text(params: dict) -> str:
    return ",".join(f"{k}={params[k]}" for k in sorted(params)) or "-"


def format_verify_text(records: list[VerificationRecord], canonical: bool) -> str:
    lines = []
    for r in records:
        head = f"{r.verdict.upper():7} {r.id:10} {_params_text(r.params)}"
        if r.verdict == "skipped":
            lines.append(f"{head}  ({r.reason})")
            continue
        c = r.computed
        body = f"order={c.get('order')} level={c.get('level')} a1={c.get('alpha1')} a2={c.get('alpha2')}"
        if "k_order" in c:
            body += f" |K|={c['k_order']} K<=Phi={'yes' if c['k_in_frattini'] else 'no'}"
            if "k_iso_label" in c:
                body += f" K={c['k_iso_label']}"
        if not canonical:
            body += f" [{r.time:.2f}s]"
        lines.append(f"{head}  {body}" + (f"  ({r.reason})" if r.reason else ""))
    counts = {v: sum(1 for r in records if r.verdict == v) for v in ("pass", "fail", "skipped")}
    lines.append(f"{len(records)} records: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    return "\n".join(lines) + "\n"


def format_verify_json(records: list[VerificationRecord], opts: Options, canonical: bool, entries) -> str:
    flags = {"entry": list(entries or []), **opts.as_dict(), "canonical": canonical}
    doc = {
        "tool_version": __version__,
        "flags": flags,
        "records": [r.as_dict(canonical) for r in records],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# analyze


def analyze_group(G, opts: Options) -> dict:
    D = st.derived_subgroup(G)
    out = {
        "name": G.name,
        "order": G.order,
        "prime": G.prime,
        "d": st.min_gens(G),
        "class": st.nilpotency_class(G),
        "exponent": st.exponent(G),
        "derived_order": D.order,
        "center_order": st.center(G).order,
        "frattini_order": st.frattini(G).order,
    }
    if G.order > opts.lattice_cap:
        out["lattice"] = f"skipped: order exceeds --lattice-cap {opts.lattice_cap}"
        return out
    rep = at.analyze(G, opts.lattice_cap)
    out["level"] = rep.level
    out["alpha"] = {str(k): v for k, v in rep.alpha.items()}
    out["alpha1"] = rep.alpha1
    out["alpha2"] = rep.alpha2
    if rep.unique_a2 is not None:
        K = rep.unique_a2
        out["unique_a2"] = {
            "order": K.order,
            "in_frattini": bool(rep.a2_in_frattini),
            "generators": K.words(),
            "label": iso.recognize(K, opts.iso_cap) if K.order <= opts.iso_cap else None,
        }
    else:
        out["unique_a2"] = None
    try:
        om = at.omega_matrix(G)
        out["omega"] = {
            "matrix": om.entries.tolist(),
            "basis": [G.element_word(a) for a in om.basis],
            "zero_principal_minors": om.zero_minors(),
        }
    except PGroupError as exc:
        out["omega"] = f"not applicable: {exc}"
    return out


def format_analysis_text(info: dict) -> str:
    lines = [f"group {info['name']}"]
    for key in ("order", "prime", "d", "class", "exponent", "derived_order", "center_order", "frattini_order"):
        lines.append(f"  {key}: {info[key]}")
    if "lattice" in info:
        lines.append(f"  lattice: {info['lattice']}")
        return "\n".join(lines) + "\n"
    lines.append(f"  level: {info['level']}")
    lines.append(f"  alpha: {info['alpha']}")
    lines.append(f"  alpha1: {info['alpha1']}  alpha2: {info['alpha2']}")
    K = info["unique_a2"]
    if K:
        where = "contained in Phi(G)" if K["in_frattini"] else "not contained in Phi(G)"
        lines.append(f"  unique A2-subgroup of order {K['order']}, {where}")
        lines.append(f"    generated by {', '.join(K['generators'])}")
        lines.append(f"    isomorphic to {K['label'] or 'no catalog label'}")
    else:
        lines.append("  no unique A2-subgroup")
    om = info["omega"]
    if isinstance(om, dict):
        lines.append(f"  omega matrix {om['matrix']} on basis {om['basis']}")
        lines.append(f"    zero principal minors: {om['zero_principal_minors']}")
    else:
        lines.append(f"  omega matrix {om}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# scan


def _catalog_by_order(opts: Options) -> dict[int, list[tuple[str, dict]]]:
    out: dict[int, list] = {}
    for id in ALL_IDS:
        for prm in catalog.parameter_grid(id, opts.caps):
            out.setdefault(catalog.expected(id, prm).order, []).append((id, prm))
    return out


def scan_file(path: Path, opts: Options, by_order, cache: dict) -> dict:
    rec = {"source": path.name}
    try:
        G = enumerate_group(load_presentation(path), opts.max_cosets)
    except (PGroupError, OSError) as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
        return rec
    rec["order"] = G.order
    if G.order > opts.lattice_cap:
        rec["error"] = f"order exceeds --lattice-cap {opts.lattice_cap}"
        return rec
    rep = at.analyze(G, opts.lattice_cap)
    D = st.derived_subgroup(G)
    rec["alpha2"] = rep.alpha2
    rec["derived_order"] = D.order
    rec["k_in_frattini"] = rep.a2_in_frattini
    rec["hit"] = bool(rep.alpha2 == 1 and D.order >= G.prime**2 and rep.a2_in_frattini)
    matched = None
    if rep.alpha2 == 1 and D.order >= G.prime**2:
        matched = "unmatched"
        if G.order <= opts.iso_cap:
            for id, prm in by_order.get(G.order, []):
                key = (id, tuple(sorted(prm.items())))
                if key not in cache:
                    cache[key] = enumerate_group(catalog.build(id, prm), opts.max_cosets)
                if iso.is_isomorphic(G, cache[key], opts.iso_cap):
                    matched = id + ("" if not prm else " " + _params_text(prm))
                    break
        else:
            matched = f"unmatched (order exceeds --iso-cap {opts.iso_cap})"
    rec["matched"] = matched
    fp = iso.fingerprint(G, 0)
    rec["fingerprint"] = {k: v for k, v in fp.__dict__.items() if k != "subgroup_counts"}
    return rec


def run_scan(directory: Path, opts: Options) -> list[dict]:
    by_order = _catalog_by_order(opts)
    cache: dict = {}
    return [scan_file(p, opts, by_order, cache) for p in sorted(directory.glob("*.pgp"))]


def format_scan_text(records: list[dict]) -> str:
    lines = []
    for r in records:
        if "error" in r:
            lines.append(f"{r['source']}: error: {r['error']}")
            continue
        line = f"{r['source']}: order={r['order']} alpha2={r['alpha2']} |G'|={r['derived_order']}"
        if r["matched"] is not None:
            line += f" K<=Phi={'yes' if r['k_in_frattini'] else 'no'} matched={r['matched']}"
        lines.append(line)
    candidates = [r for r in records if r.get("matched") is not None]
    matched = [r for r in candidates if not r["matched"].startswith("unmatched")]
    hits = [r["source"] for r in records if r.get("hit")]
    lines.append(f"{len(records)} files, {len(candidates)} with alpha2 = 1 and |G'| >= p^2, "
                 f"{len(matched)} matched, {len(candidates) - len(matched)} unmatched")
    lines.append("unique A2 inside Phi with |G'| >= p^2: " + (", ".join(hits) if hits else "none"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# export


def export_catalog(directory: Path, ids: list[str], opts: Options) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for id in ids:
        for prm in catalog.parameter_grid(id, opts.caps):
            name = id.replace(".", "_") + ("" if not prm else "_" + "_".join(f"{k}{prm[k]}" for k in sorted(prm)))
            name = name.replace("(", "").replace(")", "").replace(",", "")
            path = directory / f"{name}.pgp"
            path.write_text(catalog.build(id, prm).to_text())
            written.append(path)
    return written


# ---------------------------------------------------------------------------
# argument handling


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}")
    if not primes or any(p < 2 for p in primes):
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    return primes


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _add_caps(p: argparse.ArgumentParser):
    p.add_argument("--p", type=_prime_list, default=(2, 3, 5), help="primes to sweep, e.g. 2,3")
    p.add_argument("--max-n", type=_positive, default=4)
    p.add_argument("--max-order", type=_positive, default=6561)
    p.add_argument("--lattice-cap", type=_positive, default=DEFAULT_LATTICE_CAP)
    p.add_argument("--iso-cap", type=_positive, default=DEFAULT_ISO_CAP)
    p.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--canonical", action="store_true", help="omit wall times from the report")
    p.add_argument("--jobs", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atgroups", description="p-groups with a unique A_2-subgroup")
    parser.add_argument("--version", action="version", version=f"atgroups {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check catalog entries against their claims")
    v.add_argument("--entry", action="append", help="catalog id or glob, repeatable")
    _add_caps(v)

    a = sub.add_parser("analyze", help="structural report for one .pgp file")
    a.add_argument("path", type=Path)
    _add_caps(a)

    s = sub.add_parser("scan", help="scan a directory of .pgp files for unique A_2-subgroups")
    s.add_argument("directory", type=Path)
    _add_caps(s)

    lm = sub.add_parser("lemmas", help="run the lemma property suites")
    lm.add_argument("--suite", action="append", choices=lem.SUITES)
    lm.add_argument("--corpus-max-order", type=_positive, default=lem.CORPUS_MAX_ORDER)
    _add_caps(lm)

    ex = sub.add_parser("export", help="write catalog presentations as .pgp files")
    ex.add_argument("directory", type=Path)
    ex.add_argument("--entry", action="append")
    _add_caps(ex)
    return parser


def _options(args) -> Options:
    return Options(args.p, args.max_n, args.max_order, args.lattice_cap, args.iso_cap, args.max_cosets)


def _side_channel_times(records: list[VerificationRecord]):
    for r in records:
        if r.verdict != "skipped":
            print(f"time {r.id} {_params_text(r.params)} {r.time:.3f}s", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = _options(args)
    out = sys.stdout

    if args.command == "verify":
        try:
            ids = select_ids(args.entry)
        except ValueError as exc:
            print(f"atgroups: {exc}", file=sys.stderr)
            return 2
        records = run_verify(ids, opts, args.jobs)
        if args.format == "json":
            out.write(format_verify_json(records, opts, args.canonical, args.entry))
        else:
            out.write(format_verify_text(records, args.canonical))
        if args.canonical:
            _side_channel_times(records)
        return 1 if any(r.verdict == "fail" for r in records) else 0

    if args.command == "analyze":
        try:
            pres = load_presentation(args.path)
        except (OSError, PresentationSyntaxError) as exc:
            print(f"atgroups: {args.path}: {exc}", file=sys.stderr)
            return 2
        try:
            G = enumerate_group(pres, opts.max_cosets)
            info = analyze_group(G, opts)
        except PGroupError as exc:
            print(f"atgroups: {args.path}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 1
        out.write(json.dumps(info, indent=2) + "\n" if args.format == "json" else format_analysis_text(info))
        return 0

    if args.command == "scan":
        if not args.directory.is_dir():
            print(f"atgroups: {args.directory} is not a directory", file=sys.stderr)
            return 2
        records = run_scan(args.directory, opts)
        if args.format == "json":
            doc = {"tool_version": __version__, "flags": opts.as_dict(), "records": records}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            out.write(format_scan_text(records))
        return 0

    if args.command == "lemmas":
        suites = args.suite or lem.SUITES
        groups = None
        results = []
        for name in suites:
            if name in ("2.2", "3.1", "3.5"):
                results.append(lem.run_suite(name))
                continue
            if groups is None:
                groups = lem.corpus(args.corpus_max_order, opts.caps)
            results.append(lem.run_suite(name, groups))
        if args.format == "json":
            doc = {"tool_version": __version__, "flags": opts.as_dict(), "records": [r.as_dict() for r in results]}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            for r in results:
                status = "PASS" if r.passed else "FAIL"
                out.write(f"{status} {r.suite:4} checked={r.checked:6d} violations={len(r.violations)}  {r.title}\n")
                for v in r.violations[:20]:
                    out.write(f"    {v}\n")
        return 0 if all(r.passed for r in results) else 1

    if args.command == "export":
        try:
            ids = select_ids(args.entry)
            written = export_catalog(args.directory, ids, opts)
        except (ValueError, OSError) as exc:
            print(f"atgroups: {exc}", file=sys.stderr)
            return 2
        out.write(f"wrote {len(written)} presentations to {args.directory}\n")
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
