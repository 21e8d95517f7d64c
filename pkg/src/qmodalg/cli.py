"""Batch entry point: build algebras, run verification suites, emit reports.

Exit codes: 0 all checks pass, 1 at least one failed, 2 usage error.
Reports are deterministic: entries are emitted in a fixed order and JSON is
serialised with sorted keys, so identical configurations give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from .algebras import (
    build_akl,
    build_am,
    build_exterior,
    presentation_manifest,
    printed_rule_diffs,
    tensor_oracle_product,
)
from .braiding import projectors, verify_braid_and_skein
from .invariants import (
    fft_verify,
    psi,
    skew_duality_check,
    verify_relation_suite,
)
from .linop import LinearOperator
from .ncpoly import FuelExhausted, NCPolynomial
from .rootdata import LieTypeSpec, natural_rep, quantum_dimension
from .scalar import PoleAtOneError
from .uqaction import invariant_pair_vector, is_invariant

GRID_SPECS = [
    ("D", 2),
    ("D", 3),
    ("B", 1),
    ("B", 2),
    ("C", 2),
    ("C", 3),
    ("GL", 2),
    ("GL", 3),
]


def _fuel_default():
    env = os.environ.get("QMODALG_FUEL")
    return int(env) if env else None


# ---------------------------------------------------------------------------
# suite runners (shared between subcommands and the full grid)

def suite_braiding(spec):
    report = verify_braid_and_skein(spec)
    entries = list(report["entries"])
    projs = projectors(spec)
    names = sorted(projs)
    ident = None
    for name in names:
        p = projs[name]
        ident = p if ident is None else ident + p
        entries.append(
            {
                "citation": "projector idempotence",
                "instance": f"{spec} {name}",
                "pass": (p @ p) == p,
            }
        )
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            entries.append(
                {
                    "citation": "projector orthogonality",
                    "instance": f"{spec} {a}|{b}",
                    "pass": (projs[a] @ projs[b]).is_zero(),
                }
            )
    entries.append(
        {
            "citation": "projectors resolve the identity",
            "instance": str(spec),
            "pass": ident == LinearOperator.identity(ident.domain),
        }
    )
    ranks = {name: len(_image_rank(projs[name])) for name in names}
    entries.append(
        {
            "citation": "projector ranks",
            "instance": f"{spec}: " + ", ".join(f"{k}={v}" for k, v in sorted(ranks.items())),
            "pass": True,
        }
    )
    if str(spec) == "D2":
        entries.append(
            {
                "citation": "expected projector ranks (9, 6, 1)",
                "instance": str(spec),
                "pass": (ranks.get("sym"), ranks.get("anti"), ranks.get("triv"))
                == (9, 6, 1),
            }
        )
    return {"name": f"braiding {spec}", "entries": entries}


def _image_rank(p):
    from .linalg import EchelonBasis

    eb = EchelonBasis()
    for c in p.domain:
        col = p.column(c)
        if col:
            eb.add(col)
    return eb.pivots


def suite_dims(handle, max_degree, label):
    entries = []
    if handle.kind == "Exterior":
        m, n = handle.params["m"], handle.params["n"]
        total = 0
        for k in range(m * n + 1):
            total += sum(
                handle.graded_dimension(d) for d in handle.degree_compositions(k)
            )
        entries.append(
            {
                "citation": "exterior total dimension 2^(mn)",
                "instance": f"{label}: {total}",
                "pass": total == 2 ** (m * n),
            }
        )
        return {"name": f"dims {label}", "entries": entries}
    if handle.kind == "Akl":
        n, k, l = handle.params["n"], handle.params["k"], handle.params["l"]
        for dx in range(max_degree + 1):
            for dy in range(max_degree + 1 - dx):
                got = 0
                for comp_x in _compositions(dx, k):
                    for comp_y in _compositions(dy, l):
                        got += handle.graded_dimension(tuple(comp_x) + tuple(comp_y))
                want = comb(k * n + dx - 1, dx) * comb(l * n + dy - 1, dy)
                entries.append(
                    {
                        "citation": "flat bidegree dimension",
                        "instance": f"{label} ({dx},{dy}): {got} vs {want}",
                        "pass": got == want,
                    }
                )
        return {"name": f"dims {label}", "entries": entries}
    m = handle.params["m"]
    dim_v = natural_rep(handle.spec).dim_v
    for k in range(max_degree + 1):
        got = sum(handle.graded_dimension(d) for d in handle.degree_compositions(k))
        want = comb(m * dim_v + k - 1, k)
        entries.append(
            {
                "citation": "flat total-degree dimension",
                "instance": f"{label} k={k}: {got} vs {want}",
                "pass": got == want,
            }
        )
    return {"name": f"dims {label}", "entries": entries}


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def suite_oracle(spec, m, max_total_degree, fuel=None):
    """Presented product vs the braided tensor-route product, exhaustively."""
    handle = build_am(spec, m)
    entries = []
    words = []
    for k in range(max_total_degree + 1):
        for d in handle.degree_compositions(k):
            words.extend(handle.graded_words(d))
    mismatches = 0
    checked = 0
    for w1 in words:
        for w2 in words:
            if len(w1) + len(w2) > max_total_degree:
                continue
            p1, p2 = NCPolynomial.from_word(w1), NCPolynomial.from_word(w2)
            presented = handle.multiply(p1, p2, fuel)
            oracle = tensor_oracle_product(spec, m, p1, p2, fuel)
            checked += 1
            if presented != oracle:
                mismatches += 1
                entries.append(
                    {
                        "citation": "presented product differs from the tensor route",
                        "instance": f"{handle.render(p1)} * {handle.render(p2)}",
                        "pass": False,
                        "residual": handle.render(presented - oracle),
                    }
                )
    entries.append(
        {
            "citation": "tensor-route agreement",
            "instance": f"{spec} m={m}: {checked} pairs, {mismatches} mismatches",
            "pass": mismatches == 0,
        }
    )
    return {"name": f"oracle {spec} m={m}", "entries": entries}


def suite_oracle_diff(spec, m=2):
    """Printed presentation variants audited against the shipped rules."""
    entries = []
    for e in printed_rule_diffs(spec, m):
        entries.append(
            {
                "citation": e["provenance"],
                "instance": e["pattern"],
                "pass": True,  # audit entries are informational
                "agrees": e["agrees"],
                "printed": e["printed"],
                **({"residual": e["residual"]} if e["residual"] else {}),
            }
        )
    disagreements = sum(1 for e in entries if not e["agrees"])
    entries.append(
        {
            "citation": "printed-variant audit summary",
            "instance": f"{spec} m={m}: {disagreements} of {len(entries)} rules differ",
            "pass": True,
        }
    )
    return {"name": f"oracle-diff {spec}", "entries": entries}


def suite_invariance(spec, m=2, kl=None, include_sigma=False, fuel=None):
    entries = []
    if spec.family == "GL":
        k, l = kl
        handle = build_akl(spec.rank, k, l)
        for i in range(1, k + 1):
            for b in range(1, l + 1):
                rep = is_invariant(handle, psi(handle, (i, b), fuel), fuel=fuel)
                entries.append(
                    {
                        "citation": "pairing generator invariance",
                        "instance": f"{spec} Psi[{i},{b}]",
                        "pass": rep.verdict,
                    }
                )
    else:
        handle = build_am(spec, m)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if spec.family == "C" and i == j:
                    continue
                rep = is_invariant(
                    handle, psi(handle, (i, j), fuel), include_sigma=include_sigma, fuel=fuel
                )
                entries.append(
                    {
                        "citation": "pairing generator invariance",
                        "instance": f"{spec} Psi[{i},{j}]",
                        "pass": rep.verdict,
                    }
                )
        _, trep = invariant_pair_vector(spec)
        for e in trep["entries"]:
            entries.append(e)
    return {"name": f"invariance {spec}", "entries": entries}


def suite_relations(handle, fuel=None):
    rep = verify_relation_suite(handle, fuel)
    return {"name": f"relations {rep['algebra']}", "entries": rep["entries"]}


def suite_fft(handle, max_total, include_sigma=False, fuel=None):
    entries = []
    if handle.kind == "Akl":
        k, l = handle.params["k"], handle.params["l"]
        for dx in range(max_total + 1):
            for dy in range(max_total + 1 - dx):
                for comp_x in _compositions(dx, k):
                    for comp_y in _compositions(dy, l):
                        d = tuple(comp_x) + tuple(comp_y)
                        entries.append(fft_verify(handle, d, include_sigma, fuel))
    else:
        for k in range(max_total + 1):
            for d in handle.degree_compositions(k):
                entries.append(fft_verify(handle, d, include_sigma, fuel))
    return {"name": f"fft {handle.kind} {handle.spec} {handle.params}", "entries": entries}


def suite_skew(m, n, fuel=None):
    rep = skew_duality_check(m, n, fuel)
    return {"name": f"skew-duality ({m},{n})", "entries": rep["entries"]}


def suite_classical(fuel=None):
    """Classical-limit degeneration of every rule of every grid algebra."""
    entries = []
    handles = []
    for fam, r in GRID_SPECS:
        spec = LieTypeSpec(fam, r)
        try:
            qd = quantum_dimension(spec).classical_limit()
            ok = qd == natural_rep(spec).dim_v
        except PoleAtOneError:
            ok = False
        entries.append(
            {
                "citation": "classical limit of the quantum dimension",
                "instance": f"{spec}: {qd}",
                "pass": ok,
            }
        )
    handles.append(("A2(D2)", build_am(LieTypeSpec("D", 2), 2)))
    handles.append(("A2(B1)", build_am(LieTypeSpec("B", 1), 2)))
    handles.append(("A2(C2)", build_am(LieTypeSpec("C", 2), 2)))
    handles.append(("M22", build_am(LieTypeSpec("GL", 2), 2)))
    handles.append(("A22(GL2)", build_akl(2, 2, 2)))
    handles.append(("Ext(2,2)", build_exterior(2, 2)))
    handles.append(("Ext(2,3)", build_exterior(2, 3)))
    for label, handle in handles:
        bad = 0
        for pat, repl in handle.rs.rules.items():
            if not _classical_rule_ok(handle, pat, repl):
                bad += 1
        entries.append(
            {
                "citation": "rules degenerate to the (anti)commutative algebra at v=1",
                "instance": f"{label}: {len(handle.rs.rules)} rules, {bad} defects",
                "pass": bad == 0,
            }
        )
    return {"name": "classical-limit", "entries": entries}


def _classical_rule_ok(handle, pattern, replacement):
    exterior = handle.kind == "Exterior"

    def classical(word, coeff):
        letters = list(word)
        sign = 1
        if exterior:
            inv = sum(
                1
                for i in range(len(letters))
                for j in range(i + 1, len(letters))
                if letters[i] > letters[j]
            )
            sign = -1 if inv % 2 else 1
            if len(set(letters)) != len(letters):
                return None, None
        return tuple(sorted(letters)), sign * coeff

    acc = {}

    def add(key, value):
        if key is None:
            return
        acc[key] = acc.get(key, 0) + value

    key, val = classical(pattern, 1)
    add(key, val)
    for w, c in replacement.coeffs.items():
        try:
            limit = c.classical_limit()
        except PoleAtOneError:
            return False
        key, val = classical(w, limit)
        add(key, -val)
    return all(v == 0 for v in acc.values())


def grid_report(fuel=None, include_sigma=False):
    suites = []
    for fam, r in GRID_SPECS:
        suites.append(suite_braiding(LieTypeSpec(fam, r)))
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        spec = LieTypeSpec(fam, r)
        for m in (1, 2):
            suites.append(suite_dims(build_am(spec, m), 4, f"A{m}({spec})"))
    suites.append(suite_dims(build_am(LieTypeSpec("GL", 2), 2), 4, "M22"))
    suites.append(suite_dims(build_akl(2, 2, 2), 4, "A22(GL2)"))
    suites.append(suite_dims(build_exterior(2, 2), None, "Ext(2,2)"))
    suites.append(suite_dims(build_exterior(2, 3), None, "Ext(2,3)"))
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        suites.append(suite_oracle(LieTypeSpec(fam, r), 2, 3, fuel))
        suites.append(suite_oracle_diff(LieTypeSpec(fam, r)))
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        suites.append(
            suite_invariance(LieTypeSpec(fam, r), m=2, include_sigma=include_sigma, fuel=fuel)
        )
    suites.append(suite_invariance(LieTypeSpec("GL", 2), kl=(2, 2), fuel=fuel))
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        suites.append(suite_relations(build_am(LieTypeSpec(fam, r), 4), fuel))
    suites.append(suite_relations(build_akl(2, 2, 2), fuel))
    for fam, r in [("D", 2), ("B", 1), ("C", 2)]:
        suites.append(suite_fft(build_am(LieTypeSpec(fam, r), 2), 4, include_sigma, fuel))
    suites.append(suite_fft(build_akl(2, 2, 2), 4, False, fuel))
    suites.append(suite_skew(2, 2, fuel))
    suites.append(suite_skew(2, 3, fuel))
    suites.append(suite_classical(fuel))
    return suites


# ---------------------------------------------------------------------------
# report assembly

def assemble(config, suites, verbose=False):
    total = passed = 0
    out_suites = []
    for s in suites:
        entries = []
        for e in s["entries"]:
            total += 1
            if e.get("pass"):
                passed += 1
            e = dict(e)
            if not verbose and e.get("pass") and "residual" in e:
                del e["residual"]
            entries.append(e)
        out_suites.append({"name": s["name"], "entries": entries})
    return {
        "config": config,
        "suites": out_suites,
        "summary": {
            "total": total,
            "passed": passed,
            "failed": total - passed,
            "all_pass": passed == total,
        },
    }


def emit(report, fmt, path):
    if fmt == "json":
        text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    else:
        lines = []
        for s in report["suites"]:
            lines.append(f"== {s['name']}")
            for e in s["entries"]:
                mark = "ok  " if e.get("pass") else "FAIL"
                extra = ""
                if "invariant_dim" in e:
                    extra = f" inv={e['invariant_dim']} span={e['span_dim']}"
                if "agrees" in e:
                    extra += f" agrees={e['agrees']}"
                lines.append(f"  {mark} {e['citation']} | {e['instance']}{extra}")
                if "residual" in e and not e.get("pass"):
                    lines.append(f"       residual: {e['residual']}")
        s = report["summary"]
        lines.append(
            f"== summary: {s['passed']}/{s['total']} passed"
            + ("" if s["all_pass"] else f", {s['failed']} FAILED")
        )
        text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_from(args):
    if not args.family:
        raise SystemExit2("--family is required for this command")
    try:
        return LieTypeSpec(args.family, args.rank)
    except ValueError as exc:
        raise SystemExit2(str(exc))


class SystemExit2(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(
        prog="qmodalg",
        description="exact verification engine for braided module algebras",
    )
    p.add_argument("--grid", action="store_true", help="run the full verification grid")
    sub = p.add_subparsers(dest="command")

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", choices=["GL", "B", "C", "D"])
            sp.add_argument("--rank", type=int, default=2)
        sp.add_argument("--copies", type=int, default=2, help="tensor copies m")
        sp.add_argument("--k", type=int)
        sp.add_argument("--l", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--max-degree", type=int, default=4)
        sp.add_argument("--fuel", type=int)
        sp.add_argument("--strict", action="store_true",
                        help="use the transcribed printed presentation variants")
        sp.add_argument("--sigma", action="store_true",
                        help="include the extension generator in invariance checks")
        sp.add_argument("--exterior", action="store_true")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--output")
        sp.add_argument("--verbose", action="store_true")

    for name in (
        "dims",
        "braiding",
        "relations",
        "invariance",
        "fft",
        "skew-duality",
        "dump-presentation",
        "oracle-diff",
        "grid",
    ):
        sp = sub.add_parser(name)
        common(sp)
    return p


def _handle_from(args):
    if args.exterior:
        m = args.m or 2
        n = args.n or 2
        return build_exterior(m, n)
    spec = _spec_from(args)
    if spec.family == "GL" and args.k and args.l:
        return build_akl(spec.rank, args.k, args.l)
    return build_am(spec, args.copies, strict=getattr(args, "strict", False))


def run(argv):
    parser = build_parser()
    if "--grid" in argv and not argv[0:1] == ["grid"]:
        argv = ["grid"] + [a for a in argv if a != "--grid"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not args.command:
        parser.print_help()
        return 2
    fuel = getattr(args, "fuel", None) or _fuel_default()
    fmt = getattr(args, "format", "json")
    out = getattr(args, "output", None)
    verbose = getattr(args, "verbose", False)
    config = {
        "command": args.command,
        "family": getattr(args, "family", None),
        "rank": getattr(args, "rank", None),
        "copies": getattr(args, "copies", None),
        "k": getattr(args, "k", None),
        "l": getattr(args, "l", None),
        "m": getattr(args, "m", None),
        "n": getattr(args, "n", None),
        "max_degree": getattr(args, "max_degree", None),
        "strict": getattr(args, "strict", False),
        "sigma": getattr(args, "sigma", False),
    }
    try:
        if args.command == "grid":
            suites = grid_report(fuel, include_sigma=args.sigma)
        elif args.command == "dims":
            handle = _handle_from(args)
            suites = [suite_dims(handle, args.max_degree, "requested")]
        elif args.command == "braiding":
            suites = [suite_braiding(_spec_from(args))]
        elif args.command == "relations":
            suites = [suite_relations(_handle_from(args), fuel)]
        elif args.command == "invariance":
            spec = _spec_from(args)
            if spec.family == "GL":
                suites = [
                    suite_invariance(spec, kl=(args.k or 2, args.l or 2), fuel=fuel)
                ]
            else:
                suites = [
                    suite_invariance(
                        spec, m=args.copies, include_sigma=args.sigma, fuel=fuel
                    )
                ]
        elif args.command == "fft":
            suites = [suite_fft(_handle_from(args), args.max_degree, args.sigma, fuel)]
        elif args.command == "skew-duality":
            suites = [suite_skew(args.m or 2, args.n or 2, fuel)]
        elif args.command == "dump-presentation":
            handle = _handle_from(args)
            manifest = presentation_manifest(handle)
            text = json.dumps(manifest, indent=1, sort_keys=True) + "\n"
            if out:
                with open(out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        elif args.command == "oracle-diff":
            spec = _spec_from(args)
            suites = [
                suite_oracle(spec, args.copies, min(args.max_degree, 3), fuel),
                suite_oracle_diff(spec, args.copies),
            ]
        else:
            return 2
    except SystemExit2 as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FuelExhausted:
        sys.stderr.write("config error: straightening fuel exhausted\n")
        return 2
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    report = assemble(config, suites, verbose)
    emit(report, fmt, out)
    return 0 if report["summary"]["all_pass"] else 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
