"""Command-line client for the service.

By default each invocation runs the service in-process (no socket); with
--server URL the same requests go to a remote instance.  Output is a
canonical JSON report (sorted keys, two-space indent) or a compact text
rendering.  Exit codes: 0 success, 1 input/parse error, 2 guard tripped.
"""

from __future__ import annotations

import argparse
import asyncio
import os
import sys

from .reports import canonical_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GUARD = 2


def _read_if_file(value: str | None) -> str | None:
    """CLI sugar: arguments naming an existing file are read client-side."""
    if value is not None and os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    return value


def _call(server: str | None, path: str, payload: dict):
    import httpx

    if server:
        resp = httpx.post(server.rstrip("/") + path, json=payload,
                          timeout=None)
        return resp.status_code, resp.json()

    from .service.app import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://service",
                                     timeout=None) as client:
            return await client.post(path, json=payload)

    resp = asyncio.run(go())
    return resp.status_code, resp.json()


# -- text rendering ----------------------------------------------------------


def _fmt_check(name: str, section: dict) -> list[str]:
    out = [f"{name}: {section['status']}"]
    if section.get("witness"):
        w = section["witness"]
        out.append(f"  witness: {w if isinstance(w, str) else ', '.join(w)}")
    if section.get("detail"):
        out.append(f"  detail: {section['detail']}")
    return out


def render_text(report: dict) -> str:
    cmd = report["command"]
    r = report["results"]
    lines: list[str] = []
    if cmd == "primes":
        lines.append(f"prime ideals: {r['count']}")
        for c in r["characters"]:
            zero = ",".join(c["zero_generators"]) or "-"
            units = ",".join(c["unit_generators"]) or "-"
            words = " ".join(c["ideal_words"]) or "(empty ideal)"
            lines.append(f"  char {c['bits']}  zero [{zero}]  "
                         f"units [{units}]  ideal: {words}")
    elif cmd == "ore":
        lines.append(f"right Ore condition: {r['status']}"
                     + (f" ({r['method']})" if r.get("method") else ""))
        if r.get("certificate"):
            lines.append(f"  certificate: {r['certificate']}")
        if r.get("counterexample"):
            ce = r["counterexample"]
            lines.append(f"  counterexample: m = {ce['m']}, s = {ce['s']}")
        if r.get("unresolved"):
            u = r["unresolved"]
            lines.append(f"  unresolved pair: m = {u['m']}, s = {u['s']}")
        for row in r.get("table", []):
            lines.append(f"  ({row['m']}, {row['s']}) -> "
                         f"t = {row['t']}, n = {row['n']}")
    elif cmd == "localize":
        pres = r["presentation"]
        lines.append(f"localization: {pres['name']}")
        lines.append(f"  generators: {' '.join(pres['generators'])}")
        for rel in pres["relations"]:
            lines.append(f"  rel: {rel}")
        if r["inverses"]:
            inv = ", ".join(f"{g} -> {i}" for g, i in r["inverses"].items())
            lines.append(f"  inverses: {inv}")
        if r.get("identity_localization"):
            lines.append("  (identity localization: nothing inverted)")
        lines.append("  sample elements: "
                     + ", ".join(r["sample_elements"]))
    elif cmd == "subtoposes":
        counts = r["counts"]
        lines.append(f"subtoposes of monoid type: {counts['confirmed']} "
                     f"confirmed, {counts['excluded']} excluded, "
                     f"{counts['undecided']} undecided")
        for rec in r["records"]:
            lines.append(f"  char {rec['bits']}: {rec['status']} "
                         f"({rec['method']}) -> {rec['localization']}")
        cv = r.get("cross_validation")
        if cv:
            lines.append(f"cross-validation vs flatness: "
                         f"{cv['compared']} compared, {cv['skipped']} skipped")
            for row in cv["rows"]:
                lines.append(f"  char {row['bits']}: ore {row['ore']}, "
                             f"flatness {row['flatness']} [{row['outcome']}]")
            lines.append("  consistent: " + ("yes" if cv["consistent"]
                                             else "NO"))
    elif cmd == "flat-check":
        lines.append(f"flatness ({r['kind']}): {r['overall']}")
        for name in ("f1", "f2", "f3"):
            lines.extend("  " + s for s in _fmt_check(name, r[name]))
    elif cmd == "tensor":
        trunc = " (truncated)" if r["truncated"] else ""
        lines.append(f"tensor classes: {r['class_count']}{trunc}")
        for cls in r["classes"]:
            lines.append("  {" + ", ".join(f"({x}, {a})" for x, a in cls)
                         + "}")
    elif cmd == "points":
        if "ideals" in r:
            lines.append(f"poset: {r['poset']} ({r['poset_size']} elements)")
            lines.append(f"ideals: {r['ideal_count']}")
            for labels in r["ideals"]:
                lines.append("  {" + ", ".join(labels) + "}")
        else:
            lines.append(f"point: {r['point']} ({r['kind']})")
            if r.get("stream_prefix"):
                lines.append(f"  stream prefix: {r['stream_prefix']}...")
            fg = r["fixer_group"]
            desc = fg["kind"]
            if fg["conjugator"] is not None:
                desc += f", conjugator {fg['conjugator']}"
            if fg["generator"] is not None:
                desc += f", generator {fg['generator']}"
            lines.append(f"  fixer group: {desc}")
            mem = r.get("membership")
            if mem:
                for side in ("A", "M"):
                    if side in mem:
                        val = mem[side]
                        shown = "unknown" if val is None else str(val)
                        lines.append(f"  {mem['element']} in "
                                     f"{side}_y: {shown}")
            eq = r.get("fixers_equal_stabilizers")
            if eq:
                if eq["equal"]:
                    lines.append("  M_y = A_y on the searched ball: yes")
                else:
                    lines.append(f"  M_y = A_y: no (witness "
                                 f"{eq['witness']})")
    elif cmd == "snf":
        if "u" in r:
            lines.append(f"diagonal: {r['diagonal'][0]} {r['diagonal'][1]}")
            for name in ("u", "d", "v"):
                rows = r[name]
                lines.append(f"  {name}: " + "; ".join(
                    " ".join(str(x) for x in row) for row in rows))
            checks = r["checks"]
            bad = [k for k, v in checks.items() if not v]
            lines.append("  checks: " + ("all passed" if not bad
                                         else "FAILED " + ", ".join(bad)))
        else:
            for key in ("det", "in_prime_ideal", "fixes_e11_point",
                        "fixes_zero_point"):
                if key in r:
                    lines.append(f"{key.replace('_', ' ')}: {r[key]}")
    elif cmd == "tk":
        op = r["op"]
        if op == "normal-form":
            lines.append(f"{r['word']} = t^{r['level']} * {r['tail']}   "
                         f"(t = {r['central_generator']}, central)")
        elif op == "equal":
            lines.append(f"{r['words'][0]} = {r['words'][1]}: {r['equal']}")
        elif op == "key":
            cls = "".join(f"{g}^{e}" for g, e in r["class"]) or "1"
            lines.append(f"word {r['word']}: degree {r['degree']}, "
                         f"delta {r['delta']}, class {cls}")
    elif cmd == "sn":
        for key, val in sorted(r.items()):
            if key != "op":
                lines.append(f"{key}: {val}")
    else:
        return canonical_json(report)
    return "\n".join(lines)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="monoid-topos",
        description=("prime ideals, Ore localization, flatness, points, and "
                     "subtoposes of finitely presented monoids"))
    top.add_argument("--server", default=None,
                     help="URL of a running service (default: in-process)")
    top.add_argument("--format", choices=("json", "text"), default="text")
    sub = top.add_subparsers(dest="command", required=True)

    def add_monoid(sp, required=True):
        sp.add_argument("--monoid", required=required,
                        help="builtin spec (free:2, comm:3, torus:2,3, "
                             "arith:2,3,5, trivial), a presentation file, "
                             "or inline 'gens: ...; rel: l = r'")

    sp = sub.add_parser("primes", help="enumerate prime ideals (characters)")
    add_monoid(sp)
    sp.add_argument("--sample-len", type=int, default=2)

    sp = sub.add_parser("ore", help="test the right Ore condition")
    add_monoid(sp)
    sp.add_argument("--char", default=None,
                    help="character bitstring selecting the denominator set "
                         "(default: the whole monoid)")
    sp.add_argument("--pair-len", type=int, default=4)
    sp.add_argument("--witness-len", type=int, default=8)
    sp.add_argument("--table", action="store_true",
                    help="include the full witness table")

    sp = sub.add_parser("localize", help="present a localization")
    add_monoid(sp)
    sp.add_argument("--char", required=True)
    sp.add_argument("--sample-len", type=int, default=2)

    sp = sub.add_parser("subtoposes",
                        help="complete list of subtoposes of monoid type")
    add_monoid(sp)
    sp.add_argument("--pair-len", type=int, default=4)
    sp.add_argument("--witness-len", type=int, default=8)
    sp.add_argument("--cross-validate", action="store_true",
                    help="replay each verdict against the flatness test")
    sp.add_argument("--trunc", type=int, default=4)

    sp = sub.add_parser("flat-check", help="flatness of a left action")
    add_monoid(sp)
    sp.add_argument("--mset", default=None,
                    help="finite left action (file or inline text)")
    sp.add_argument("--char", default=None,
                    help="check the localization at this character instead")
    sp.add_argument("--trunc", type=int, default=4)
    sp.add_argument("--search-len", type=int, default=None)

    sp = sub.add_parser("tensor", help="tensor a right action with a left one")
    add_monoid(sp)
    sp.add_argument("--right", required=True,
                    help="finite right action (file or inline text)")
    sp.add_argument("--left", default=None,
                    help="finite left action (default: the monoid itself)")
    sp.add_argument("--char", default=None,
                    help="tensor with the localization at this character")
    sp.add_argument("--trunc", type=int, default=4)

    sp = sub.add_parser("points", help="points, posets, and stabilizer data")
    add_monoid(sp, required=False)
    sp.add_argument("--max-len", type=int, default=3,
                    help="poset truncation for the ideal listing")
    sp.add_argument("--divisors", type=int, default=None,
                    help="use the divisor poset of this integer")
    sp.add_argument("--point", default=None,
                    help="'abba*' (finite), 'ab(ba)^w' (periodic), or 'fib'")
    sp.add_argument("--member", default=None,
                    help="group word to test (case convention: aB = a b^-1)")
    sp.add_argument("--which", choices=("A", "M", "both"), default="both")
    sp.add_argument("--check-eq", action="store_true",
                    help="search for a group word separating M_y from A_y")
    sp.add_argument("--bound", type=int, default=8)

    sp = sub.add_parser("snf", help="2x2 integer matrices: Smith normal form "
                                    "and membership closed forms")
    sp.add_argument("--matrix", required=True, help='e.g. "2 0; 0 3"')
    sp.add_argument("--sigma", default=None,
                    help="comma-separated primes: det-divisibility membership")
    sp.add_argument("--e11", action="store_true",
                    help="stabilizer membership for the rank-one idempotent "
                         "(rational matrix allowed)")

    sp = sub.add_parser("tk", help="the a^k = b^l family, exact word problem")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("op", choices=("normal-form", "equal", "key"))
    sp.add_argument("words", nargs="*")

    sp = sub.add_parser("sn", help="supernatural numbers and rational points")
    sp.add_argument("--primes", required=True, help="e.g. 2,3,5")
    sp.add_argument("--y", default=None, help="e.g. 2:inf,3:1")
    sp.add_argument("op", choices=("describe", "divides", "in-A", "in-M"))
    sp.add_argument("value", nargs="?", default=None)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return top


def _payload(args) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "primes":
        return "/primes", {"monoid": _read_if_file(args.monoid),
                           "sample_len": args.sample_len}
    if cmd == "ore":
        return "/ore", {"monoid": _read_if_file(args.monoid),
                        "char": args.char, "pair_len": args.pair_len,
                        "witness_len": args.witness_len, "table": args.table}
    if cmd == "localize":
        return "/localize", {"monoid": _read_if_file(args.monoid),
                             "char": args.char,
                             "sample_len": args.sample_len}
    if cmd == "subtoposes":
        return "/subtoposes", {"monoid": _read_if_file(args.monoid),
                               "pair_len": args.pair_len,
                               "witness_len": args.witness_len,
                               "cross_validate": args.cross_validate,
                               "trunc": args.trunc}
    if cmd == "flat-check":
        return "/flat-check", {"monoid": _read_if_file(args.monoid),
                               "mset": _read_if_file(args.mset),
                               "char": args.char, "trunc": args.trunc,
                               "search_len": args.search_len}
    if cmd == "tensor":
        return "/tensor", {"monoid": _read_if_file(args.monoid),
                           "right_mset": _read_if_file(args.right),
                           "left_mset": _read_if_file(args.left),
                           "char": args.char, "trunc": args.trunc}
    if cmd == "points":
        return "/points", {"monoid": _read_if_file(args.monoid),
                           "max_len": args.max_len,
                           "divisors": args.divisors, "point": args.point,
                           "member": args.member, "which": args.which,
                           "check_eq": args.check_eq, "bound": args.bound}
    if cmd == "snf":
        return "/snf", {"matrix": args.matrix, "sigma": args.sigma,
                        "e11": args.e11}
    if cmd == "tk":
        return "/tk", {"k": args.k, "l": args.l, "op": args.op,
                       "words": args.words}
    if cmd == "sn":
        return "/sn", {"primes": args.primes, "y": args.y, "op": args.op,
                       "value": args.value}
    raise AssertionError(cmd)


def _emit(text: str) -> None:
    """Print, tolerating a closed downstream pipe (e.g. `... | head`)."""
    try:
        print(text)
        sys.stdout.flush()
    except BrokenPipeError:
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    path, payload = _payload(args)
    status, body = _call(args.server, path, payload)
    if status == 200:
        if args.format == "json":
            _emit(canonical_json(body))
        else:
            _emit(render_text(body))
        return EXIT_OK
    err = body.get("error") if isinstance(body, dict) else None
    if err:
        print(f"error ({err.get('kind', 'input')}): {err.get('message', '')}",
              file=sys.stderr)
        return EXIT_GUARD if err.get("kind") == "guard" else EXIT_INPUT
    print(f"error: HTTP {status}: {body}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
