"""NOT/OR boolean circuits in a small line format.

::

    input x
    input y
    n = NOT x
    o = OR n y
    output o

Blank lines and ``#`` comments are ignored. AND gates are rejected; express
them with NOT and OR.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    out: str
    op: str  # "NOT" or "OR"
    args: tuple[str, ...]


@dataclass(frozen=True)
class Circuit:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    output: str
    wires: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "wires", self.inputs + tuple(g.out for g in self.gates))
        _validate(self)

    def uses(self) -> dict[str, int]:
        """Number of times each wire is read, counting the output once."""
        count = {w: 0 for w in self.wires}
        for g in self.gates:
            for a in g.args:
                count[a] += 1
        count[self.output] += 1
        return count


def _validate(c: Circuit) -> None:
    seen: set[str] = set()
    for name in c.inputs:
        if name in seen:
            raise CircuitError(f"wire {name!r} defined twice")
        seen.add(name)
    for g in c.gates:
        if g.op not in ("NOT", "OR"):
            raise CircuitError(f"unsupported gate {g.op!r}")
        if len(g.args) != (1 if g.op == "NOT" else 2):
            raise CircuitError(f"{g.op} gate {g.out!r} has {len(g.args)} operands")
        for a in g.args:
            if a not in seen:
                raise CircuitError(f"gate {g.out!r} reads undefined wire {a!r}")
        if g.out in seen:
            raise CircuitError(f"wire {g.out!r} defined twice")
        seen.add(g.out)
    if c.output not in seen:
        raise CircuitError(f"output wire {c.output!r} is undefined")


def parse_circuit(text: str) -> Circuit:
    inputs: list[str] = []
    gates: list[Gate] = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "input" and len(tokens) == 2:
                inputs.append(tokens[1])
            elif tokens[0] == "output" and len(tokens) == 2:
                if output is not None:
                    raise CircuitError("more than one output line")
                output = tokens[1]
            elif len(tokens) >= 3 and tokens[1] == "=":
                op = tokens[2].upper()
                if op == "AND":
                    raise CircuitError("AND gates are not supported; rewrite with NOT and OR")
                if op not in ("NOT", "OR"):
                    raise CircuitError(f"unknown gate {tokens[2]!r}")
                gates.append(Gate(tokens[0], op, tuple(tokens[3:])))
            else:
                raise CircuitError("syntax error")
        except CircuitError as exc:
            raise CircuitError(f"line {lineno}: {exc}") from None
    if output is None:
        raise CircuitError("missing output line")
    return Circuit(tuple(inputs), tuple(gates), output)


def format_circuit(c: Circuit) -> str:
    lines = [f"input {x}" for x in c.inputs]
    lines += [f"{g.out} = {g.op} {' '.join(g.args)}" for g in c.gates]
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


def _fresh(c: Circuit, stem: str) -> str:
    taken = set(c.wires)
    for k in itertools.count(1):
        if f"{stem}{k}" not in taken:
            return f"{stem}{k}"
    raise AssertionError


def normalize_circuit(c: Circuit) -> Circuit:
    """Ensure at least one NOT gate by appending a double negation of the first input.

    The new wires feed nothing, so satisfiability is unchanged.
    """
    if any(g.op == "NOT" for g in c.gates):
        return c
    if not c.inputs:
        raise CircuitError("circuit has no inputs to negate")
    n1 = _fresh(c, "n")
    tmp = Circuit(c.inputs, c.gates + (Gate(n1, "NOT", (c.inputs[0],)),), c.output)
    n2 = _fresh(tmp, "n")
    return Circuit(c.inputs, tmp.gates + (Gate(n2, "NOT", (n1,)),), c.output)


def evaluate(c: Circuit, assignment: Mapping[str, bool]) -> dict[str, bool]:
    """Values of every wire under an assignment of the inputs."""
    val = {x: bool(assignment[x]) for x in c.inputs}
    for g in c.gates:
        if g.op == "NOT":
            val[g.out] = not val[g.args[0]]
        else:
            val[g.out] = val[g.args[0]] or val[g.args[1]]
    return val


def satisfying_assignments(c: Circuit) -> Iterator[dict[str, bool]]:
    for bits in itertools.product((False, True), repeat=len(c.inputs)):
        a = dict(zip(c.inputs, bits))
        if evaluate(c, a)[c.output]:
            yield a
