"""Command-line front end.

Circuits travel as JSON documents::

    {"field": "Q",
     "nodes": ["A", "B"],
     "edges": [{"src": "A", "tgt": "B", "impedance": "2"}],
     "inputs": ["A"],
     "outputs": ["B"]}

Signal-flow terms use a tiny infix language: generators

    add zero copy discard delay x(a)
    co-add co-zero co-copy co-discard co-delay co-x(a)
    id tw

composed with ``;`` (sequential) and ``(+)`` (parallel, binds tighter),
with parentheses for grouping.  Example: ``copy ; (delay (+) id) ; add``.

Exit codes: 0 success / answer true, 1 answer false (equiv,
controllable, check-trace, step), 2 usage error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .circuit import ImpedanceError, LabelledGraph, OpenCircuit
from .dirichlet import circuits_equivalent, power_functional
from .finset import FinCospan, FinFunction
from .lti import (
    BehaviourRep,
    behaviour_eq,
    behaviour_rep,
    controllable_part,
    is_controllable,
)
from .scalars import Field, ScalarParseError, field_by_name
from .sfg import (
    INFEASIBLE,
    NONDETERMINATE,
    Gen,
    Par,
    Seq,
    Term,
    check_trace,
    denote_cospan,
    sfg_denote,
    step,
    term_type,
)
from .symplectic import black_box

USAGE_ERROR = 2
PARSE_ERROR = 3


class DocumentError(ValueError):
    """A malformed circuit document, with the offending context."""


# -- circuit documents -------------------------------------------------------


def parse_circuit_document(doc: dict, default_field: Field | None = None):
    """Validate a circuit JSON document into (OpenCircuit, node names)."""
    if not isinstance(doc, dict):
        raise DocumentError("circuit document must be a JSON object")
    field_name = doc.get("field")
    if field_name is None:
        field = default_field or field_by_name("Q")
    else:
        field = field_by_name(str(field_name))
        if default_field is not None and field != default_field:
            raise DocumentError(
                f"document field {field.name} conflicts with --field {default_field.name}"
            )
    nodes = doc.get("nodes")
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise DocumentError("'nodes' must be a list of names")
    if len(set(nodes)) != len(nodes):
        duplicates = sorted({n for n in nodes if nodes.count(n) > 1})
        raise DocumentError(f"duplicate node names: {', '.join(duplicates)}")
    index = {name: k for k, name in enumerate(nodes)}
    edges = []
    for position, edge in enumerate(doc.get("edges", [])):
        if not isinstance(edge, dict):
            raise DocumentError(f"edge #{position} must be an object")
        try:
            src = index[edge["src"]]
            tgt = index[edge["tgt"]]
        except KeyError as missing:
            raise DocumentError(
                f"edge #{position} references unknown node {missing}"
            ) from None
        text = str(edge.get("impedance", ""))
        try:
            impedance = field.parse(text)
        except (ScalarParseError, ValueError) as err:
            raise DocumentError(f"edge #{position} impedance: {err}") from None
        edges.append((src, tgt, impedance))

    def leg(key: str) -> FinFunction:
        names = doc.get(key, [])
        if not isinstance(names, list):
            raise DocumentError(f"'{key}' must be a list of node names")
        table = []
        for name in names:
            if name not in index:
                raise DocumentError(f"'{key}' references unknown node {name!r}")
            table.append(index[name])
        return FinFunction(len(table), len(nodes), tuple(table))

    graph = LabelledGraph(len(nodes), tuple(edges))
    cospan = FinCospan(leg("inputs"), leg("outputs"))
    try:
        circuit = OpenCircuit(field, graph, cospan)
    except ImpedanceError as err:
        raise DocumentError(str(err)) from None
    return circuit, nodes


def format_circuit_document(circuit: OpenCircuit, nodes: list[str] | None = None) -> dict:
    """Canonical document: parse . format is the identity on valid input."""
    if nodes is None:
        nodes = [f"v{k}" for k in range(circuit.graph.num_nodes)]
    return {
        "field": circuit.field.name,
        "nodes": list(nodes),
        "edges": [
            {
                "src": nodes[s],
                "tgt": nodes[t],
                "impedance": circuit.field.format(z),
            }
            for s, t, z in circuit.graph.edges
        ],
        "inputs": [nodes[v] for v in circuit.cospan.left.table],
        "outputs": [nodes[v] for v in circuit.cospan.right.table],
    }


def load_circuit(path: str, default_field: Field | None = None):
    try:
        with open(path) as handle:
            doc = json.load(handle)
    except OSError as err:
        raise DocumentError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise DocumentError(f"{path}: invalid JSON: {err}") from None
    try:
        return parse_circuit_document(doc, default_field)
    except DocumentError as err:
        raise DocumentError(f"{path}: {err}") from None


# -- term parsing ------------------------------------------------------------


class TermParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


_GENERATOR_NAMES = (
    "add",
    "zero",
    "copy",
    "discard",
    "delay",
    "co-add",
    "co-zero",
    "co-copy",
    "co-discard",
    "co-delay",
    "id",
    "tw",
)


class _TermParser:
    """term := par (';' par)*;  par := atom ('(+)' atom)*."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> TermParseError:
        return TermParseError(self.text, self.pos, message)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def lookahead(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def take(self, token: str) -> bool:
        if self.lookahead(token):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> Term:
        term = self.sequence()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return term

    def sequence(self) -> Term:
        term = self.parallel()
        while self.take(";"):
            term = Seq(term, self.parallel())
        return term

    def parallel(self) -> Term:
        term = self.atom()
        while self.take("(+)"):
            term = Par(term, self.atom())
        return term

    def atom(self) -> Term:
        self.skip_ws()
        if self.lookahead("(+)"):
            raise self.error("expected a generator or '('")
        if self.take("("):
            term = self.sequence()
            if not self.take(")"):
                raise self.error("expected ')'")
            return term
        for name in ("co-x", "x"):
            if self._at_scalar_name(name):
                self.pos += len(name)
                if not self.take("("):
                    raise self.error(f"'{name}' takes a rational argument")
                value = self.rational()
                if not self.take(")"):
                    raise self.error("expected ')'")
                return Gen(name, value)
        for name in sorted(_GENERATOR_NAMES, key=len, reverse=True):
            if self._at_name(name):
                self.pos += len(name)
                return Gen(name)
        raise self.error("expected a generator or '('")

    def _at_name(self, name: str) -> bool:
        self.skip_ws()
        if not self.text.startswith(name, self.pos):
            return False
        after = self.pos + len(name)
        if after < len(self.text) and (
            self.text[after].isalnum() or self.text[after] in "-_"
        ):
            return False
        return True

    def _at_scalar_name(self, name: str) -> bool:
        self.skip_ws()
        if not self.text.startswith(name, self.pos):
            return False
        after = self.pos + len(name)
        rest = self.text[after:].lstrip()
        return rest.startswith("(") and not rest.startswith("(+)")

    def rational(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and (
            self.text[self.pos].isdigit() or self.text[self.pos] == "/"
        ):
            self.pos += 1
        try:
            return Fraction(self.text[start : self.pos])
        except (ValueError, ZeroDivisionError):
            raise self.error("expected a rational number") from None


def parse_term(text: str) -> Term:
    term = _TermParser(text).parse()
    term_type(term)
    return term


def load_term(path: str) -> Term:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as err:
        raise TermParseError("", 0, f"cannot read {path}: {err}") from None
    return parse_term(text)


def format_term(term: Term) -> str:
    if isinstance(term, Gen):
        if term.value is not None:
            return f"{term.name}({term.value})"
        return term.name
    if isinstance(term, Seq):
        return f"{format_term(term.first)} ; {format_term(term.second)}"
    left = format_term(term.first)
    right = format_term(term.second)
    if isinstance(term.first, Seq):
        left = f"({left})"
    if isinstance(term.second, (Seq, Par)):
        right = f"({right})"
    return f"{left} (+) {right}"


# -- reports -----------------------------------------------------------------


def _relation_report(circuit: OpenCircuit, relation, as_json: bool):
    x, y = relation.dom_n, relation.cod_n
    columns = (
        [f"phi_in{k}" for k in range(x)]
        + [f"phi_out{k}" for k in range(y)]
        + [f"i_in{k}" for k in range(x)]
        + [f"i_out{k}" for k in range(y)]
    )
    rows = [
        [circuit.field.format(v) for v in row] for row in relation.space.basis
    ]
    if as_json:
        return json.dumps({"columns": columns, "basis": rows}, indent=2)
    width = max(
        [len(c) for c in columns] + [len(v) for row in rows for v in row] + [1]
    )
    lines = ["behaviour basis (rows span the relation):"]
    lines.append("  " + "  ".join(c.rjust(width) for c in columns))
    for row in rows:
        lines.append("  " + "  ".join(v.rjust(width) for v in row))
    return "\n".join(lines)


def _behaviour_report(rep: BehaviourRep, as_json: bool):
    columns = [f"x{k}" for k in range(rep.m)] + [f"y{k}" for k in range(rep.n)]
    rows = [[str(e) for e in row] for row in rep.kernel_matrix.entries]
    if as_json:
        return json.dumps({"columns": columns, "kernel": rows}, indent=2)
    width = max([len(c) for c in columns] + [len(v) for row in rows for v in row] + [1])
    lines = ["kernel representation [A -B] (rows are equations):"]
    lines.append("  " + "  ".join(c.rjust(width) for c in columns))
    for row in rows:
        lines.append("  " + "  ".join(v.rjust(width) for v in row))
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------


def _cmd_circuit_compose(args) -> int:
    field = field_by_name(args.field) if args.field else None
    a, _ = load_circuit(args.first, field)
    b, _ = load_circuit(args.second, field)
    from .circuit import compose_circuits

    composed = compose_circuits(a, b)
    doc = format_circuit_document(composed)
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_circuit_blackbox(args) -> int:
    field = field_by_name(args.field) if args.field else None
    circuit, _ = load_circuit(args.circuit, field)
    method = "oracle" if args.oracle else "fast"
    relation = black_box(circuit, method)
    print(_relation_report(circuit, relation, args.json))
    return 0


def _cmd_circuit_equiv(args) -> int:
    field = field_by_name(args.field) if args.field else None
    a, _ = load_circuit(args.first, field)
    b, _ = load_circuit(args.second, field)
    equivalent = circuits_equivalent(a, b)
    if args.oracle:
        fast = black_box(a, "fast").space == black_box(b, "fast").space
        slow = black_box(a, "oracle").space == black_box(b, "oracle").space
        if fast != equivalent or slow != equivalent:
            print("internal error: pipelines disagree", file=sys.stderr)
            return USAGE_ERROR
    if args.json:
        print(json.dumps({"equivalent": equivalent}))
    else:
        print(f"equivalent: {'true' if equivalent else 'false'}")
    return 0 if equivalent else 1


def _cmd_circuit_power(args) -> int:
    field = field_by_name(args.field) if args.field else None
    circuit, nodes = load_circuit(args.circuit, field)
    from .circuit import boundary

    q = power_functional(circuit)
    names = [nodes[v] for v in boundary(circuit)]
    rows = [[circuit.field.format(v) for v in row] for row in q.coeff]
    if args.json:
        print(json.dumps({"boundary": names, "coefficients": rows}, indent=2))
        return 0
    print("power functional coefficients c_ij (Q = sum c_ij (psi_i - psi_j)^2):")
    width = max([len(n) for n in names] + [len(v) for row in rows for v in row] + [1])
    print("  " + " ".join(n.rjust(width) for n in [""] + names))
    for name, row in zip(names, rows):
        print("  " + " ".join(v.rjust(width) for v in [name] + row))
    return 0


def _cmd_sfg_denote(args) -> int:
    term = load_term(args.term)
    rep = behaviour_rep(sfg_denote(term))
    if args.oracle:
        raw = behaviour_rep(denote_cospan(term))
        if not behaviour_eq(rep, raw):
            print("internal error: reduction changed the behaviour", file=sys.stderr)
            return USAGE_ERROR
    print(_behaviour_report(rep, args.json))
    return 0


def _cmd_sfg_equiv(args) -> int:
    first = load_term(args.first)
    second = load_term(args.second)
    if term_type(first) != term_type(second):
        print(
            f"terms have different types {term_type(first)} vs {term_type(second)}",
            file=sys.stderr,
        )
        return USAGE_ERROR
    equivalent = behaviour_eq(
        behaviour_rep(sfg_denote(first)), behaviour_rep(sfg_denote(second))
    )
    if args.json:
        print(json.dumps({"equivalent": equivalent}))
    else:
        print(f"equivalent: {'true' if equivalent else 'false'}")
    return 0 if equivalent else 1


def _cmd_sfg_controllable(args) -> int:
    term = load_term(args.term)
    cospan = sfg_denote(term)
    controllable = is_controllable(cospan)
    if args.json:
        payload = {"controllable": controllable}
        if not controllable:
            r, s = controllable_part(cospan)
            payload["controllable_part"] = {
                "into_domain": [[str(e) for e in row] for row in r.entries],
                "into_codomain": [[str(e) for e in row] for row in s.entries],
            }
        print(json.dumps(payload, indent=2))
        return 0 if controllable else 1
    print(f"controllable: {'true' if controllable else 'false'}")
    if not controllable:
        r, s = controllable_part(cospan)
        print("maximal controllable sub-behaviour, as a span e -> domain, e -> codomain:")
        print("into domain:")
        print(str(r))
        print("into codomain:")
        print(str(s))
    return 0 if controllable else 1


def _parse_vector(text: str, what: str) -> list[Fraction]:
    try:
        data = json.loads(text)
        return [Fraction(str(v)) for v in data]
    except (json.JSONDecodeError, ValueError, TypeError) as err:
        raise DocumentError(f"invalid {what}: {err}") from None


def _cmd_sfg_check_trace(args) -> int:
    term = load_term(args.term)
    m, n = term_type(term)
    try:
        data = json.loads(args.window)
    except json.JSONDecodeError as err:
        raise DocumentError(f"invalid window: {err}") from None
    window = []
    for tick in data:
        if not isinstance(tick, list) or len(tick) != 2:
            raise DocumentError("window ticks must be [left, right] pairs")
        u = [Fraction(str(v)) for v in tick[0]]
        v = [Fraction(str(v)) for v in tick[1]]
        if len(u) != m or len(v) != n:
            raise DocumentError(f"tick dimensions must be ({m}, {n})")
        window.append((u, v))
    init = _parse_vector(args.init, "init") if args.init else None
    realizable = check_trace(term, window, init)
    if args.json:
        print(json.dumps({"realizable": realizable}))
    else:
        print(f"realizable: {'true' if realizable else 'false'}")
    return 0 if realizable else 1


def _cmd_sfg_step(args) -> int:
    term = load_term(args.term)
    state = _parse_vector(args.state, "state") if args.state else []
    u = _parse_vector(args.left, "left boundary") if args.left else []
    v = _parse_vector(args.right, "right boundary") if args.right else []
    outcome = step(term, state, (u, v))
    if outcome == INFEASIBLE:
        print(json.dumps({"result": "infeasible"}) if args.json else "infeasible")
        return 1
    if outcome == NONDETERMINATE:
        print(
            json.dumps({"result": "nondeterminate"}) if args.json else "nondeterminate"
        )
        return 1
    if args.json:
        print(json.dumps({"result": "ok", "state": [str(v) for v in outcome]}))
    else:
        print("next state: [" + ", ".join(str(v) for v in outcome) + "]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="openwires",
        description="Exact compositional semantics for open circuits and signal-flow diagrams.",
    )
    subparsers = parser.add_subparsers(dest="domain", required=True)

    circuit = subparsers.add_parser("circuit", help="open circuit commands")
    circuit_sub = circuit.add_subparsers(dest="command", required=True)

    def circuit_common(p):
        p.add_argument("--field", choices=["q", "qs"], help="default scalar field")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--oracle",
            action="store_true",
            help="run the slow verification pipeline as a cross-check",
        )

    p = circuit_sub.add_parser("compose", help="glue two circuits along the shared boundary")
    p.add_argument("first")
    p.add_argument("second")
    circuit_common(p)
    p.set_defaults(func=_cmd_circuit_compose)

    p = circuit_sub.add_parser("blackbox", help="behaviour as a Lagrangian relation")
    p.add_argument("circuit")
    circuit_common(p)
    p.set_defaults(func=_cmd_circuit_blackbox)

    p = circuit_sub.add_parser("equiv", help="same power functional?")
    p.add_argument("first")
    p.add_argument("second")
    circuit_common(p)
    p.set_defaults(func=_cmd_circuit_equiv)

    p = circuit_sub.add_parser("power", help="power functional on the boundary")
    p.add_argument("circuit")
    circuit_common(p)
    p.set_defaults(func=_cmd_circuit_power)

    sfg = subparsers.add_parser("sfg", help="signal-flow term commands")
    sfg_sub = sfg.add_subparsers(dest="command", required=True)

    def sfg_common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--oracle",
            action="store_true",
            help="run the slow verification pipeline as a cross-check",
        )

    p = sfg_sub.add_parser("denote", help="kernel representation of a term")
    p.add_argument("term")
    sfg_common(p)
    p.set_defaults(func=_cmd_sfg_denote)

    p = sfg_sub.add_parser("equiv", help="same behaviour?")
    p.add_argument("first")
    p.add_argument("second")
    sfg_common(p)
    p.set_defaults(func=_cmd_sfg_equiv)

    p = sfg_sub.add_parser("controllable", help="controllability test")
    p.add_argument("term")
    sfg_common(p)
    p.set_defaults(func=_cmd_sfg_controllable)

    p = sfg_sub.add_parser("check-trace", help="is a window realizable?")
    p.add_argument("term")
    p.add_argument("--window", required=True, help="JSON [[left, right], ...]")
    p.add_argument("--init", help="JSON register assignment at the first tick")
    sfg_common(p)
    p.set_defaults(func=_cmd_sfg_check_trace)

    p = sfg_sub.add_parser("step", help="one clock tick")
    p.add_argument("term")
    p.add_argument("--state", help="JSON register assignment")
    p.add_argument("--left", help="JSON left boundary values")
    p.add_argument("--right", help="JSON right boundary values")
    sfg_common(p)
    p.set_defaults(func=_cmd_sfg_step)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return USAGE_ERROR if exit_.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DocumentError, TermParseError, ScalarParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return PARSE_ERROR
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
