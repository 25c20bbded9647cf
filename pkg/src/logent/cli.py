"""Command-line front end.

Every subcommand takes JSON input as a file path, ``-`` for stdin, or an
inline JSON string, and prints a table (default), JSON, or a diagram.

Exit codes: 0 success, 1 domain error, 2 unparseable input.  Errors are
written to stderr as a JSON object.
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, density, ditbit, entropy, maxent, partitions, quantum, render, stats
from ._numeric import EXACT, FLOAT, as_exact, fmt, render as jrender
from .errors import LogentError, SchemaError


class InputError(Exception):
    """Input could not be read or parsed."""


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def load_json(arg):
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON input: {exc}") from exc


def parse_number(tok, mode):
    tok = tok.strip()
    if mode == FLOAT:
        return float(as_exact(tok)) if "/" in tok else float(tok)
    return as_exact(tok)


def parse_values(text, mode=EXACT):
    """``"1,2,3"``, ``"1..6"`` (inclusive integer range) or a mix of both."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(parse_number(part, mode))
    except (ValueError, SchemaError) as exc:
        raise InputError(f"cannot parse value list {text!r}") from exc
    if mode == FLOAT:
        out = [float(v) for v in out]
    return out


def parse_dist(arg):
    """A distribution from JSON (list or object) or a comma list."""
    text = arg.strip()
    if text.startswith(("[", "{")) or arg == "-" or os.path.exists(arg):
        return entropy.Dist.from_json(load_json(arg))
    vals = parse_values(text, FLOAT if any("." in t and "/" not in t for t in text.split(",")) else EXACT)
    return entropy.Dist(tuple(vals))


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def to_jsonable(x):
    if isinstance(x, dict):
        return {k: to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return jrender(x)
    if isinstance(x, float):
        return x
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def table(rows):
    """Two-column ``name  value`` layout."""
    rows = [(str(k), v if isinstance(v, str) else fmt(v)) for k, v in rows]
    w = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def emit(args, payload, rows, diagram=None):
    if args.format == "json":
        print(json.dumps(to_jsonable(payload), indent=2))
    elif args.format == "diagram" and diagram is not None:
        print(diagram)
    else:
        print(table(rows))


def common_denominator(probs):
    den = 1
    for p in probs:
        den = den * p.denominator // math.gcd(den, p.denominator)
    return den, [int(p * den) for p in probs]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_partition(args):
    p = partitions.Partition.from_json(load_json(args.partition))
    probs = parse_dist(args.probs) if args.probs else entropy.Dist.uniform(p.n)
    pp = entropy.ProbPartition(p, probs)
    payload = {"partition": p.to_json(), "dit_count": partitions.dit_count(p), "h": entropy.h_partition(pp)}
    rows = [("blocks", str(p)), ("dit_count", payload["dit_count"]), ("h", payload["h"])]
    if args.other:
        q = partitions.Partition.from_json(load_json(args.other))
        j = partitions.join(p, q)
        payload.update({
            "other": q.to_json(),
            "join": j.to_json(),
            "join_dit_count": partitions.dit_count(j),
            "h_join": entropy.h_partition(pp.with_partition(j)),
            "refines": partitions.refines(p, q),
            "refined_by": partitions.refines(q, p),
            "common_dits": partitions.common_dits_exist(p, q),
        })
        rows += [
            ("other", str(q)),
            ("join", str(j)),
            ("join_dit_count", payload["join_dit_count"]),
            ("h_join", payload["h_join"]),
            ("partition refines other", str(payload["refines"])),
            ("other refines partition", str(payload["refined_by"])),
            ("common dits", str(payload["common_dits"])),
        ]
    emit(args, payload, rows)


TWO_AXIS = ("hx", "hy", "hjoint", "hx_given_y", "hy_given_x", "mxy")


def cmd_entropy(args):
    if args.dist:
        d = parse_dist(args.dist)
        payload = {"h": entropy.h(d), "H": entropy.H(d, args.base)}
        emit(args, payload, [("h", payload["h"]), ("H", payload["H"])])
        return
    if not args.joint:
        raise InputError("entropy needs --joint or --dist")
    j = entropy.JointDist.from_json(load_json(args.joint))
    if j.ndim == 3:
        names = "xyz"
        payload = {}
        for a in range(3):
            payload[f"h_{names[a]}"] = entropy.logical_of_axes(j, (a,))
        payload["h_xyz"] = entropy._h_array(j.table)
        payload["m_xyz"] = entropy.mutual3_logical(j)
        for a in range(3):
            payload[f"H_{names[a]}"] = entropy.shannon_of_axes(j, (a,), args.base)
        payload["H_xyz"] = entropy.shannon_of_axes(j, (0, 1, 2), args.base)
        payload["I_xyz"] = entropy.mutual3_shannon(j, args.base)
        emit(args, payload, list(payload.items()))
        return
    logical = entropy.compound_logical(j)
    shannon = entropy.compound_shannon(j, args.base)
    keys = dict(zip(TWO_AXIS, ("h_x", "h_y", "h_joint", "h_x_given_y", "h_y_given_x", "m_xy")))
    if args.quantity == "all":
        payload = {"logical": logical.as_dict(), "shannon": shannon.as_dict()}
        rows = list(logical.as_dict().items()) + list(shannon.as_dict().items())
        quantity = "hjoint"
    else:
        quantity = args.quantity
        payload = {keys[quantity]: getattr(logical, keys[quantity])}
        rows = list(payload.items())
    diagram = None
    if args.format == "diagram" or args.svg:
        box = entropy.box_diagram(j, quantity)
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(render.box_svg(box))
        diagram = render.box_ascii(box)
        payload["diagram"] = box.to_json()
    emit(args, payload, rows, diagram)


def cmd_ditbit(args):
    j = entropy.JointDist.from_json(load_json(args.joint))
    out = ditbit.transform_table(j, args.base)
    payload = {}
    rows = []
    for name, (lv, sv) in out.items():
        expr = ditbit.joint_forms()[name]
        payload[name] = {"logical": lv, "shannon": sv, "form": str(expr),
                         "transformed": str(ditbit.dit_bit_transform(expr))}
        rows.append((name, f"{fmt(lv)}  ->  {fmt(sv)}"))
    emit(args, payload, rows)


def cmd_maxent(args):
    mode = args.mode
    values = parse_values(args.values, mode)
    mean = parse_number(args.mean, mode)
    prob = maxent.MeanConstraintProblem(tuple(values), mean, mode)
    objectives = ("shannon", "logical") if args.objective == "both" else (args.objective,)
    payload = {"values": list(prob.values), "mean": prob.target_mean, "mode": mode}
    rows = []
    sols = {}
    for obj in objectives:
        if obj == "shannon":
            sol = maxent.solve_max_shannon(prob)
        else:
            sol = maxent.solve_max_logical(prob)
        sols[obj] = sol
        entry = sol.to_json()
        if sol.probs.mode == EXACT:
            den, nums = common_denominator(sol.probs.probs)
            entry["denominator"] = den
            entry["numerators"] = nums
            rows.append((f"{obj} p", "(" + ",".join(map(str, nums)) + f")/{den}"))
        else:
            rows.append((f"{obj} p", "(" + ", ".join(f"{v:.4f}" for v in sol.probs.probs) + ")"))
        rows.append((f"{obj} objective", sol.objective))
        if obj == "shannon":
            rows.append(("shannon w", sol.w))
            rows.append(("shannon tau", sol.multipliers.tau))
        payload[obj] = entry
    lo, hi = maxent.interior_bounds(prob)
    payload["interior_bounds"] = [lo, hi]
    rows.append(("interior bounds", f"({fmt(lo)}, {fmt(hi)})"))
    if len(sols) == 2:
        c = maxent.compare_solutions(sols["logical"], sols["shannon"])
        payload["comparison"] = dict(c.__dict__)
        rows.append(("var logical", c.var_a))
        rows.append(("var shannon", c.var_b))
    emit(args, payload, rows)


def cmd_boltzmann(args):
    levels = parse_values(args.levels, FLOAT)
    prob = maxent.BoltzmannProblem(args.particles, tuple(levels), args.energy)
    if args.approx:
        res = maxent.boltzmann_shannon_approx(prob)
        payload = res.to_json()
        rows = [("occupancies", "(" + ", ".join(f"{v:.4f}" for v in res.occupancies_real) + ")"),
                ("H_e", res.H_e)]
    else:
        res = maxent.boltzmann_exact(prob)
        payload = res.to_json()
        rows = [(str(o), w) for o, w in res.feasible]
        rows += [("winner", str(res.occupancies)), ("multinomial", res.multinomial), ("S", res.normalized_log)]
    emit(args, payload, rows)


def cmd_stats(args):
    obj = load_json(args.input)
    if not isinstance(obj, dict):
        raise SchemaError("stats input must be a JSON object")
    payload = {}
    if "joint" in obj:
        j = entropy.JointDist.from_json(obj["joint"])
        rv = stats.MetricJointRV(tuple(obj["x_values"]), tuple(obj["y_values"]), j)
        payload["metrical_cov"] = stats.metrical_cov(rv)
        payload["metrical_cov_unordered"] = stats.metrical_cov(rv, ordered=False)
        payload["cov"] = rv.covariance()
    else:
        if "values" not in obj or "probs" not in obj:
            raise SchemaError("stats input needs 'values' and 'probs', or 'joint'")
        d = entropy.Dist.from_json({"probs": obj["probs"], "mode": obj.get("mode")})
        rv = stats.MetricRV(tuple(obj["values"]), d)
        payload["metrical_h"] = stats.metrical_h(rv)
        payload["metrical_h_unordered"] = stats.metrical_h(rv, ordered=False)
        payload["var"] = rv.variance()
        if "distances" in obj:
            dm = stats.DistanceMatrix(obj["distances"])
            payload["quadratic_entropy"] = stats.quadratic_entropy(dm, d)
    emit(args, payload, list(payload.items()))


def cmd_density(args):
    p = partitions.Partition.from_json(load_json(args.partition))
    probs = parse_dist(args.probs) if args.probs else entropy.Dist.uniform(p.n)
    pp = entropy.ProbPartition(p, probs)
    rho = density.rho_of_partition(pp)
    payload = {"rho": rho.to_json(), "h": density.logical_entropy_of_rho(rho)}
    rows = [("h", payload["h"])]
    text = density.pretty(rho)
    if args.measure:
        sigma = partitions.Partition.from_json(load_json(args.measure))
        after = density.luders_join(rho, sigma)
        payload["after"] = after.to_json()
        payload["h_after"] = density.logical_entropy_of_rho(after)
        payload["entropy_created"] = density.entropy_created(rho, after)
        payload["hamming_distance"] = density.hamming_distance(rho, after)
        rows += [("h_after", payload["h_after"]), ("entropy_created", payload["entropy_created"])]
        text += "\n\nafter measurement:\n" + density.pretty(after)
    if args.format == "table":
        print(text)
        print()
    emit(args, payload, rows, text)


def cmd_quantum(args):
    s = quantum.PureState.from_json(load_json(args.state))
    if args.observable:
        F = quantum.Observable.from_json(load_json(args.observable))
    else:
        F = quantum.Observable.diagonal(tuple(range(s.n)))
    probs = quantum.measurement_probs(F, s)
    payload = {"probs": list(probs.probs), "h": quantum.quantum_logical_entropy(F, s)}
    rows = [("Pr(phi_%d)" % i, p) for i, p in enumerate(probs.probs)] + [("h", payload["h"])]
    if args.check_theorem:
        chk = quantum.measurement_entropy_theorem_check(F, s)
        payload["theorem"] = chk.to_json()
        rows += [("h_direct", chk.h_direct), ("h_post_rho", chk.h_post_rho),
                 ("zeroed_abs_sq_sum", chk.zeroed_abs_sq_sum)]
    if args.other:
        G = quantum.Observable.from_json(load_json(args.other))
        c = quantum.compound_quantum_entropies(F, G, s)
        payload["compound"] = dict(c.__dict__)
        rows += list(c.__dict__.items())
    emit(args, payload, rows)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _base(text):
    if text == "e":
        return "e"
    try:
        return float(text) if text != "2" else 2
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"log base must be 2, e or a number, got {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="logent", description="Logical and Shannon entropy toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("json", "table", "diagram"), default="table")
        sp.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
        sp.set_defaults(func=func)
        return sp

    sp = add("partition", cmd_partition, "partition facts, joins and refinement")
    sp.add_argument("--partition", required=True, help="partition JSON, file path or -")
    sp.add_argument("--other", help="second partition for join/refinement")
    sp.add_argument("--probs", help="point probabilities (default uniform)")

    sp = add("entropy", cmd_entropy, "simple and compound entropies")
    sp.add_argument("--joint", help="joint distribution JSON, file path or -")
    sp.add_argument("--dist", help="single distribution: JSON or comma list")
    sp.add_argument("--quantity", choices=("all",) + TWO_AXIS, default="all")
    sp.add_argument("--base", type=_base, default=2)
    sp.add_argument("--svg", help="also write the box diagram as SVG to this path")

    sp = add("ditbit", cmd_ditbit, "compound logical forms and their dit-bit transforms")
    sp.add_argument("--joint", required=True)
    sp.add_argument("--base", type=_base, default=2)

    sp = add("maxent", cmd_maxent, "maximum entropy under a mean constraint")
    sp.add_argument("--values", required=True, help="e.g. 1,2,3 or 1..6")
    sp.add_argument("--mean", required=True)
    sp.add_argument("--objective", choices=("shannon", "logical", "both"), default="both")
    sp.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)

    sp = add("boltzmann", cmd_boltzmann, "integer occupancy maximisation")
    sp.add_argument("--particles", type=int, required=True)
    sp.add_argument("--levels", required=True)
    sp.add_argument("--energy", type=float, required=True)
    sp.add_argument("--approx", action="store_true", help="continuous Shannon relaxation instead")

    sp = add("stats", cmd_stats, "variance and covariance as metrical logical entropy")
    sp.add_argument("--input", required=True)

    sp = add("density", cmd_density, "partition density matrices and measurement")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--probs")
    sp.add_argument("--measure", help="partition to measure with (Lueders join)")

    sp = add("quantum", cmd_quantum, "quantum logical entropy of a pure state")
    sp.add_argument("--state", required=True)
    sp.add_argument("--observable")
    sp.add_argument("--other", help="second observable on the same eigenbasis")
    sp.add_argument("--check-theorem", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InputError, SchemaError) as exc:
        err = exc.to_json() if isinstance(exc, SchemaError) else {"error": "parse_error", "message": str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return 2
    except LogentError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
