"""picod command line: bound, synth, verify, oracle, sweep.

Exit codes: 0 success, 1 validity or match failure, 2 usage error,
3 construction failure.
"""

from __future__ import annotations

import argparse
import sys

from . import kernels
from .construct import default_field, synthesize
from .errors import ConstructionError, PicodError, SearchCeilingExceeded, UsageError
from .gf import FieldSpec
from .model import COMPLEMENT, CONSECUTIVE, KNOWLEDGE_MODES, STATIC, ProblemInstance, length_to_json
from .oracle import DEFAULT_CEILING, SearchSpace, certified_minimum, exists_valid_code
from .serialize import code_to_json, dumps, read_code
from .theorems import decentralized_optimum
from .verify import validate

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CONSTRUCTION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _instance(a) -> ProblemInstance:
    if a.m is None or a.t is None:
        raise UsageError("--m and --t are required")
    if a.s is not None:
        if a.smin is not None or a.smax is not None:
            raise UsageError("give either --s or --smin/--smax, not both")
        return ProblemInstance(a.m, a.t, _parse_list(a.s))
    if a.smin is None or a.smax is None:
        raise UsageError("give --s LIST or both --smin and --smax")
    if a.mode == "complement":
        return ProblemInstance.complement(a.m, a.t, a.smin, a.smax)
    return ProblemInstance.consecutive(a.m, a.t, a.smin, a.smax)


def _field(a) -> FieldSpec | None:
    if getattr(a, "b", None) is None:
        return None
    return FieldSpec(a.b, a.poly or 0)


def _emit(text: str, out=None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def comparison_line(instance: ProblemInstance) -> str:
    b = decentralized_optimum(instance)
    rel = "differ" if b.differs_from_centralized else "equal"
    return f"centralized {b.centralized} vs decentralized {b.value}: {rel}"


# -- subcommands ---------------------------------------------------------------


def cmd_bound(a) -> int:
    inst = _instance(a)
    b = decentralized_optimum(inst)
    if a.format == "json":
        _emit(dumps({
            "instance": inst.to_json(),
            "decentralized": length_to_json(b.value),
            "centralized": length_to_json(b.centralized),
            "kind": b.kind,
            "source": b.source,
            "flagged": b.flagged,
        }))
    else:
        lines = [str(b.value), f"instance: {inst} ({inst.kind})", comparison_line(inst)]
        if b.flagged:
            lines.append("warning: closed form does not exceed t; review manually")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_synth(a) -> int:
    inst = _instance(a)
    f = _field(a) or default_field(inst)
    code = synthesize(inst, f, seed=a.seed)
    report = validate(code)
    optimum = decentralized_optimum(inst).value
    match = code.length == optimum
    _emit(dumps(code_to_json(code, report)), a.out)
    if a.out not in (None, "-"):
        status = "valid" if report.valid else "INVALID"
        sys.stderr.write(
            f"{inst}: scheme {code.scheme}, length {code.length} (optimum {optimum}), {status}\n"
        )
    return EXIT_OK if report.valid and match else EXIT_INVALID


def cmd_verify(a) -> int:
    code, embedded = read_code(a.code)
    report = validate(code)
    if a.report:
        _emit(dumps(report.to_json()), a.report)
    stale = embedded is not None and embedded.to_json() != report.to_json()
    if a.format == "json":
        _emit(dumps({"report": report.to_json(), "embedded_report_matches": not stale}))
    else:
        lines = [f"instance: {code.instance} ({code.instance.kind})",
                 f"length: {code.length}  field: {code.field}  beta: {code.beta}",
                 f"schedule ({code.knowledge_mode}): {'ok' if report.schedule_ok else 'VIOLATED'}"]
        for v in report.violations:
            lines.append(f"  row {v.row} by user {v.user} uses unknown messages {list(v.missing)}")
        if report.unsatisfied:
            lines.append(f"unsatisfied users: {list(report.unsatisfied)}")
        if code.instance.kind in (CONSECUTIVE, COMPLEMENT):
            lines.append(comparison_line(code.instance))
        if stale:
            lines.append("embedded report differs from recomputed report")
        lines.append("VALID" if report.valid else "INVALID")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if report.valid and not stale else EXIT_INVALID


def _witness_json(code):
    return code_to_json(code, validate(code)) if code is not None else None


def cmd_oracle(a) -> int:
    inst = _instance(a)
    f = _field(a) or FieldSpec(1)
    if a.beta_max < 1:
        raise UsageError("--beta-max must be >= 1")
    prune = not a.no_prune
    if a.subslots is not None:
        results = []
        for beta in range(1, a.beta_max + 1):
            space = SearchSpace(inst, f, beta, a.subslots, a.knowledge)
            try:
                res = exists_valid_code(space, a.ceiling, prune)
            except SearchCeilingExceeded as exc:
                results.append({"beta": beta, "refused": True, "size": exc.size})
                continue
            results.append({
                "beta": beta, "refused": False, "exists": res.found, "size": res.size,
                "level": res.level, "states_per_level": res.states_per_level,
                "evaluations": res.evaluations, "backend": res.backend,
                "witness": _witness_json(res.witness),
            })
        if a.format == "json":
            _emit(dumps({"instance": inst.to_json(), "field": f.to_json(), "subslots": a.subslots,
                         "knowledge_mode": a.knowledge, "results": results}))
        else:
            lines = [f"instance: {inst}  field: {f}  mode: {a.knowledge}  subslots <= {a.subslots}"]
            for r in results:
                if r["refused"]:
                    lines.append(f"beta={r['beta']}: refused, search size {r['size']} > ceiling {a.ceiling}")
                elif r["exists"]:
                    w = r["witness"]
                    path = ", ".join(f"row {e['row']} by user {e['user']}" for e in w["schedule"])
                    lines.append(f"beta={r['beta']}: valid code with {r['level']} sub-slots; witness: {path}")
                    lines.extend("  " + " ".join(map(str, row)) for row in w["generator"])
                else:
                    lines.append(
                        f"beta={r['beta']}: none exists (exhausted {sum(r['states_per_level'])} row spaces)"
                    )
            _emit("\n".join(lines) + "\n")
        return EXIT_INVALID if any(r["refused"] for r in results) else EXIT_OK

    res = certified_minimum(inst, f, a.beta_max, a.knowledge, a.ceiling, prune)
    closed = None
    if inst.kind in (CONSECUTIVE, COMPLEMENT):
        closed = decentralized_optimum(inst).value
    match = closed is not None and res.value == closed
    if a.format == "json":
        _emit(dumps({
            "instance": inst.to_json(),
            "field": f.to_json(),
            "knowledge_mode": a.knowledge,
            "beta_max": a.beta_max,
            "minimum": length_to_json(res.value) if res.value is not None else None,
            "certified": res.certified,
            "closed_form": length_to_json(closed) if closed is not None else None,
            "match": match,
            "per_beta": [
                {"beta": o.beta, "searched_up_to": o.searched_up_to, "min_subslots": o.min_subslots,
                 "complete": o.complete}
                for o in res.per_beta
            ],
            "witness": _witness_json(res.witness),
        }))
    else:
        tag = "certified" if res.certified else "upper bound only"
        lines = [f"instance: {inst}  field: {f}  mode: {a.knowledge}  beta <= {a.beta_max}",
                 f"minimum length: {res.value} ({tag})"]
        for o in res.per_beta:
            found = o.min_subslots if o.min_subslots is not None else "none"
            lines.append(f"  beta={o.beta}: searched <= {o.searched_up_to} sub-slots, found {found}")
        if closed is not None:
            lines.append(f"closed form: {closed} -> {'match' if match else 'EXCESS'}")
        _emit("\n".join(lines) + "\n")
    if closed is None:
        return EXIT_OK if res.certified else EXIT_INVALID
    return EXIT_OK if match and res.certified else EXIT_INVALID


def sweep_instances(m_min: int, m_max: int, t_max: int) -> list[ProblemInstance]:
    """Every consecutive and complement-consecutive instance in the grid."""
    out = []
    for m in range(m_min, m_max + 1):
        for t in range(1, min(t_max, m) + 1):
            top = m - t
            for lo in range(0, top + 1):
                for hi in range(lo, top + 1):
                    if hi > 0:
                        out.append(ProblemInstance.consecutive(m, t, lo, hi))
                    if 0 < lo and hi < top:
                        out.append(ProblemInstance.complement(m, t, lo, hi))
    return out


def cmd_sweep(a) -> int:
    rows = []
    failed = False
    for inst in sweep_instances(a.m_min, a.m_max, a.t_max):
        optimum = decentralized_optimum(inst).value
        try:
            code = synthesize(inst, seed=a.seed)
        except ConstructionError as exc:
            rows.append((inst, optimum, None, False, False, "", str(exc)))
            failed = True
            continue
        valid = validate(code).valid
        match = code.length == optimum
        failed |= not (valid and match)
        rows.append((inst, optimum, code.length, valid, match, code.scheme, ""))
    if a.format == "json":
        _emit(dumps({"rows": [
            {"instance": i.to_json(), "optimum": length_to_json(o),
             "achieved": length_to_json(l) if l is not None else None,
             "valid": v, "match": mt, "scheme": s, "error": e}
            for i, o, l, v, mt, s, e in rows
        ]}))
    else:
        head = f"{'m':>2} {'t':>2} {'kind':<12} {'smin':>4} {'smax':>4}  {'S':<14} {'optimum':>7} {'achieved':>8} {'valid':>5} {'match':>5}  scheme"
        lines = [head]
        for i, o, l, v, mt, s, e in rows:
            kind = "complement" if i.kind == COMPLEMENT else i.kind
            S = "{" + ",".join(map(str, i.S)) + "}"
            lines.append(
                f"{i.m:>2} {i.t:>2} {kind:<12} {i.smin:>4} {i.smax:>4}  {S:<14} {str(o):>7} "
                f"{str(l) if l is not None else '-':>8} {'yes' if v else 'no':>5} {'yes' if mt else 'no':>5}  {s or e}"
            )
        ok = sum(1 for r in rows if r[3] and r[4])
        lines.append(f"{ok}/{len(rows)} instances valid and optimal")
        _emit("\n".join(lines) + "\n")
    return EXIT_INVALID if failed else EXIT_OK


# -- parser --------------------------------------------------------------------


def _instance_args(p, with_mode=True):
    p.add_argument("--m", type=int, help="number of messages")
    p.add_argument("--t", type=int, help="messages each user must decode")
    p.add_argument("--s", help="side-information sizes, comma separated")
    p.add_argument("--smin", type=int)
    p.add_argument("--smax", type=int)
    if with_mode:
        p.add_argument("--mode", choices=("consecutive", "complement"), default="consecutive",
                       help="how --smin/--smax are read")


def _field_args(p):
    p.add_argument("--b", type=int, help="field GF(2^b); default depends on the instance")
    p.add_argument("--poly", type=int, help="reduction polynomial as an integer bit mask")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="picod", description="Decentralized pliable index codes for complete-S instances.")
    p.add_argument("--backend", action="store_true", help="print the kernel backend and exit")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    q = sub.add_parser("bound", help="closed-form optimal length")
    _instance_args(q)
    q.add_argument("--format", choices=("text", "json"), default="text")

    q = sub.add_parser("synth", help="build an optimal code")
    _instance_args(q)
    _field_args(q)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", help="output path (default stdout)")

    q = sub.add_parser("verify", help="validate a code file")
    q.add_argument("code")
    q.add_argument("--report", help="write the report JSON here")
    q.add_argument("--format", choices=("text", "json"), default="text")

    q = sub.add_parser("oracle", help="exhaustive search for short linear codes")
    _instance_args(q)
    _field_args(q)
    q.add_argument("--beta-max", type=int, default=2)
    q.add_argument("--subslots", type=int, help="only ask whether a code with this many sub-slots exists")
    q.add_argument("--knowledge", choices=KNOWLEDGE_MODES, default=STATIC,
                   help="static side information or sequentially grown knowledge")
    q.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    q.add_argument("--no-prune", action="store_true", help="disable message-relabeling pruning")
    q.add_argument("--format", choices=("text", "json"), default="text")

    q = sub.add_parser("sweep", help="synthesize and check a parameter grid")
    q.add_argument("--m-min", type=int, default=2)
    q.add_argument("--m-max", type=int, default=6)
    q.add_argument("--t-max", type=int, default=2)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--format", choices=("text", "json"), default="text")
    return p


COMMANDS = {"bound": cmd_bound, "synth": cmd_synth, "verify": cmd_verify, "oracle": cmd_oracle, "sweep": cmd_sweep}


def main(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        if a.backend:
            print(kernels.BACKEND)
            return EXIT_OK
        if a.cmd is None:
            raise UsageError("missing subcommand (bound, synth, verify, oracle, sweep)")
        return COMMANDS[a.cmd](a)
    except UsageError as exc:
        sys.stderr.write(f"picod: error: {exc}\n")
        return EXIT_USAGE
    except ConstructionError as exc:
        sys.stderr.write(f"picod: construction failed: {exc}\n")
        return EXIT_CONSTRUCTION
    except PicodError as exc:
        sys.stderr.write(f"picod: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
