"""Reading and writing the OPB pseudo-Boolean exchange format.

Only the decision fragment is supported: `*` comment lines and constraint
lines of the form `[+|-]<int> x<idx> ... <op> <int> ;`.  Objective lines
are rejected with a clear message.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constraints import PBConstraint, RawConstraint

_OPS = ("<=", ">=", "=", "<", ">")
_VAR_RE = re.compile(r"x\d+$")
_COEF_RE = re.compile(r"[+-]?\d+$")


class OpbParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class Instance:
    """A parsed OPB file: named variables plus raw constraints.

    Internal variable ids are dense from 1, assigned in first-appearance
    order; `names[i-1]` is the external name of id i.
    """

    names: list[str] = field(default_factory=list)
    name_to_id: dict[str, int] = field(default_factory=dict)
    constraints: list[RawConstraint] = field(default_factory=list)

    def intern(self, name: str) -> int:
        vid = self.name_to_id.get(name)
        if vid is None:
            self.names.append(name)
            vid = len(self.names)
            self.name_to_id[name] = vid
        return vid


def _tokens_with_columns(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_opb(text: str) -> Instance:
    """Parse OPB text into an Instance; raises OpbParseError with position."""
    inst = Instance()
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.strip()
        if not line or line.startswith("*"):
            continue
        if line.startswith("min:") or line.startswith("max:"):
            raise OpbParseError(
                "objective lines are not supported (decision problems only)",
                lineno, 1,
            )
        tokens = _tokens_with_columns(raw_line)
        # the trailing ';' may be its own token or glued to the bound
        if tokens[-1][0] == ";":
            tokens = tokens[:-1]
        elif tokens[-1][0].endswith(";"):
            tok, col = tokens[-1]
            tokens[-1] = (tok[:-1], col)
        else:
            raise OpbParseError("constraint must end with ';'", lineno, tokens[-1][1])
        if len(tokens) < 2:
            raise OpbParseError("truncated constraint", lineno, 1)
        op_tok, op_col = tokens[-2]
        if op_tok not in _OPS:
            raise OpbParseError(f"expected comparison operator, got {op_tok!r}",
                                lineno, op_col)
        bound_tok, bound_col = tokens[-1]
        if not _COEF_RE.match(bound_tok):
            raise OpbParseError(f"bad bound {bound_tok!r}", lineno, bound_col)
        bound = int(bound_tok)
        body = tokens[:-2]
        if len(body) % 2:
            raise OpbParseError("terms must be <coefficient> <variable> pairs",
                                lineno, body[-1][1])
        terms = []
        for idx in range(0, len(body), 2):
            coef_tok, coef_col = body[idx]
            var_tok, var_col = body[idx + 1]
            if not _COEF_RE.match(coef_tok):
                raise OpbParseError(f"bad coefficient {coef_tok!r}", lineno, coef_col)
            if not _VAR_RE.match(var_tok):
                raise OpbParseError(f"bad variable {var_tok!r}", lineno, var_col)
            terms.append((int(coef_tok), inst.intern(var_tok)))
        inst.constraints.append(RawConstraint(terms, op_tok, bound))
    return inst


def write_opb(
    constraints: Iterable[PBConstraint | RawConstraint],
    names: Sequence[str] | None = None,
    header: Iterable[str] = (),
) -> str:
    """Render constraints as OPB text; `names[v-1]` names variable v."""

    def name_of(v: int) -> str:
        return names[v - 1] if names else f"x{v}"

    lines = [f"* {h}" for h in header]
    for c in constraints:
        raw = c.to_raw() if isinstance(c, PBConstraint) else c
        parts = [f"{coef:+d} {name_of(var)}" for coef, var in raw.terms]
        parts.append(raw.op)
        parts.append(str(raw.bound))
        lines.append(" ".join(parts) + " ;")
    return "\n".join(lines) + "\n"
