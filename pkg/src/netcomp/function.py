"""Target functions f: A^s -> O stored as dense truth tables.

Inputs and outputs are the integers ``0..q-1`` and ``0..m-1``. A row
``(x_1, ..., x_s)`` is stored at index ``sum(x_j * q**(s - j))``, so column 1
is the most significant digit and tables read in natural argument order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import InvalidInput, ParseError


def mixed_rank(digits: Sequence[int], radix: int) -> int:
    r = 0
    for d in digits:
        r = r * radix + d
    return r


def mixed_unrank(rank: int, radix: int, length: int) -> tuple[int, ...]:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        rank, out[i] = divmod(rank, radix)
    return tuple(out)


@dataclass(frozen=True)
class TargetFunction:
    arity: int
    input_size: int
    output_size: int
    table: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if self.arity < 1:
            raise InvalidInput("arity must be at least 1")
        if self.input_size < 2:
            raise InvalidInput("input alphabet must have at least 2 symbols")
        if self.output_size < 1:
            raise InvalidInput("output alphabet must be non-empty")
        if len(self.table) != self.input_size ** self.arity:
            raise InvalidInput(
                f"table has {len(self.table)} entries, expected {self.input_size ** self.arity}"
            )
        for v in self.table:
            if not 0 <= v < self.output_size:
                raise InvalidInput(f"table entry {v} outside output alphabet")

    @property
    def s(self) -> int:
        return self.arity

    @property
    def q(self) -> int:
        return self.input_size

    @property
    def m(self) -> int:
        return self.output_size

    def index(self, row: Sequence[int]) -> int:
        if len(row) != self.arity:
            raise InvalidInput(f"row has length {len(row)}, expected {self.arity}")
        for v in row:
            if not 0 <= v < self.input_size:
                raise InvalidInput(f"input symbol {v} outside alphabet of size {self.input_size}")
        return mixed_rank(row, self.input_size)

    def evaluate(self, row: Sequence[int]) -> int:
        return self.table[self.index(row)]

    def __call__(self, *row: int) -> int:
        return self.evaluate(row)

    def evaluate_block(self, x: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Row-wise application to a k x s input matrix."""
        if not len(x):
            raise InvalidInput("input matrix needs at least one row")
        return tuple(self.evaluate(row) for row in x)

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def rows(self):
        return itertools.product(range(self.input_size), repeat=self.arity)


def _table(s: int, q: int, rule) -> tuple[int, ...]:
    return tuple(rule(row) for row in itertools.product(range(q), repeat=s))


BUILTINS = ("identity", "mod-sum", "arithmetic-sum", "product-plus-mod2", "max", "constant")


def builtin(name: str, **params: int) -> TargetFunction:
    """Named function families.

    ``identity`` takes ``q``; ``mod-sum`` takes ``s``, ``q`` and an optional
    modulus ``mod`` (default ``q``); ``arithmetic-sum`` and ``max`` take ``s``
    and ``q``; ``constant`` takes ``s``, ``q`` and ``value``.
    ``product-plus-mod2`` is x1*x2 + x3 over the binary field.
    """
    allowed = {
        "identity": {"q"},
        "mod-sum": {"s", "q", "mod"},
        "arithmetic-sum": {"s", "q"},
        "product-plus-mod2": set(),
        "max": {"s", "q"},
        "constant": {"s", "q", "value"},
    }
    if name not in allowed:
        raise InvalidInput(f"unknown builtin function {name!r}")
    extra = set(params) - allowed[name]
    if extra:
        raise InvalidInput(f"builtin {name!r} does not take {sorted(extra)}")
    s = params.get("s", 1)
    q = params.get("q", 2)
    if s < 1 or q < 2:
        raise InvalidInput("need s >= 1 and q >= 2")

    if name == "identity":
        return TargetFunction(1, q, q, tuple(range(q)), "identity")
    if name == "mod-sum":
        mod = params.get("mod", q)
        if mod < 1:
            raise InvalidInput("modulus must be positive")
        return TargetFunction(s, q, mod, _table(s, q, lambda r: sum(r) % mod), "mod-sum")
    if name == "arithmetic-sum":
        return TargetFunction(s, q, s * (q - 1) + 1, _table(s, q, sum), "arithmetic-sum")
    if name == "max":
        return TargetFunction(s, q, q, _table(s, q, max), "max")
    if name == "constant":
        value = params.get("value", 0)
        if value < 0:
            raise InvalidInput("constant value must be non-negative")
        return TargetFunction(s, q, value + 1, (value,) * q ** s, "constant")
    return TargetFunction(
        3, 2, 2, _table(3, 2, lambda r: (r[0] * r[1] + r[2]) % 2), "product-plus-mod2"
    )


# -- text format -----------------------------------------------------------

def parse_function(text: str, path: str = "<function>") -> TargetFunction:
    fields: dict[str, object] = {}
    name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0]
        if key == "function":
            if len(tok) != 2:
                raise ParseError(path, lineno, line, "expected 'function <name>'")
            name = tok[1]
        elif key in ("arity", "input-alphabet", "output-alphabet"):
            if len(tok) != 2:
                raise ParseError(path, lineno, line, f"expected '{key} <int>'")
            try:
                fields[key] = int(tok[1])
            except ValueError:
                raise ParseError(path, lineno, tok[1], "expected an integer") from None
        elif key == "table":
            vals = []
            for t in tok[1:]:
                try:
                    vals.append(int(t))
                except ValueError:
                    raise ParseError(path, lineno, t, "table entries must be integers") from None
            fields["table"] = (lineno, vals)
        elif key == "builtin":
            if len(tok) < 2:
                raise ParseError(path, lineno, line, "expected 'builtin <name> [key=value ...]'")
            params = {}
            for t in tok[2:]:
                k, sep, v = t.partition("=")
                if not sep:
                    raise ParseError(path, lineno, t, "builtin parameters are key=value")
                try:
                    params[k] = int(v)
                except ValueError:
                    raise ParseError(path, lineno, t, "builtin parameter values are integers") from None
            try:
                f = builtin(tok[1], **params)
            except InvalidInput as exc:
                raise ParseError(path, lineno, tok[1], str(exc)) from None
            fields["builtin"] = f
        else:
            raise ParseError(path, lineno, key, "unknown directive")
    if "builtin" in fields:
        f = fields["builtin"]
        if name:
            f = TargetFunction(f.arity, f.input_size, f.output_size, f.table, name)
        return f
    missing = [k for k in ("arity", "input-alphabet", "output-alphabet", "table") if k not in fields]
    if missing:
        raise ParseError(path, 0, missing[0], "missing directive")
    lineno, vals = fields["table"]
    try:
        return TargetFunction(
            fields["arity"], fields["input-alphabet"], fields["output-alphabet"], tuple(vals), name
        )
    except InvalidInput as exc:
        raise ParseError(path, lineno, "table", str(exc)) from None


def format_function(f: TargetFunction) -> str:
    lines = []
    if f.name:
        lines.append(f"function {f.name}")
    lines += [
        f"arity {f.arity}",
        f"input-alphabet {f.input_size}",
        f"output-alphabet {f.output_size}",
        "table " + " ".join(map(str, f.table)),
    ]
    return "\n".join(lines) + "\n"
