"""Plain-text instance format.

An instance file is line-oriented and self-describing: a header, the
mixing weight and part flags, the two objective blocks, the region
block, and a terminating ``end``::

    fwsubmix-instance 1
    lambda 0.5
    flags g_monotone=0 g_nonneg=1 c_monotone=0 c_nonneg=0
    objective g quadratic
    matrix H 2 2
    -0.5 -0.25
    -0.25 -0.75
    vector h 2
    0.1 0.2
    scalar c 10.0
    objective c quadratic
    ...
    region polytope
    matrix A 1 2
    0.6 0.8
    vector b 1
    1.0
    vector u 2
    1.0 1.0
    end

Matrices carry a ``rows cols`` header followed by row-major decimal
values; floats are written with ``repr`` so a round trip is exact.
Blank lines and ``#`` comment lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import ObjectivePair, ProblemInstance
from .errors import ParseError
from .objectives import (
    DOptimalDesign,
    LogBarrier,
    QuadraticObjective,
    SimilarityConcave,
    SoftmaxExtension,
)
from .regions import Box, Cardinality, Polytope

FORMAT_VERSION = 1
_FLAG_NAMES = ("g_monotone", "g_nonneg", "c_monotone", "c_nonneg")


@dataclass
class InstanceSpec:
    """Structured (serializable) form of a problem instance."""

    g: object
    c: object
    region: object
    lam: float = 0.5
    g_monotone: bool = False
    g_nonneg: bool = False
    c_monotone: bool = False
    c_nonneg: bool = False

    def to_problem(self) -> ProblemInstance:
        obj = ObjectivePair(
            dim=self.region.dim,
            val_g=self.g.value,
            grad_g=self.g.gradient,
            val_c=self.c.value,
            grad_c=self.c.gradient,
            lam=self.lam,
            g_monotone=self.g_monotone,
            g_nonneg=self.g_nonneg,
            c_monotone=self.c_monotone,
            c_nonneg=self.c_nonneg,
        )
        return ProblemInstance(objective=obj, region=self.region, dimension=self.region.dim)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return repr(float(v))


def _matrix_lines(name: str, M: np.ndarray) -> list[str]:
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    lines = [f"matrix {name} {M.shape[0]} {M.shape[1]}"]
    for row in M:
        lines.append(" ".join(_fmt(v) for v in row))
    return lines


def _vector_lines(name: str, v: np.ndarray) -> list[str]:
    v = np.asarray(v, dtype=np.float64)
    return [f"vector {name} {v.shape[0]}", " ".join(_fmt(x) for x in v)]


def _objective_lines(role: str, obj) -> list[str]:
    if isinstance(obj, QuadraticObjective):
        return (
            [f"objective {role} quadratic"]
            + _matrix_lines("H", obj.H)
            + _vector_lines("h", obj.h)
            + [f"scalar c {_fmt(obj.c)}"]
        )
    if isinstance(obj, SoftmaxExtension):
        return [f"objective {role} softmax"] + _matrix_lines("L", obj.L)
    if isinstance(obj, SimilarityConcave):
        return [f"objective {role} similarity"] + _matrix_lines("L", obj.L)
    if isinstance(obj, DOptimalDesign):
        return [f"objective {role} doptimal"] + _matrix_lines("Y", obj.Y)
    if isinstance(obj, LogBarrier):
        return [
            f"objective {role} logbarrier",
            f"scalar scale {_fmt(obj.scale)}",
            f"scalar dim {obj.dim}",
        ]
    raise TypeError(f"cannot serialize objective of type {type(obj).__name__}")


def _region_lines(region) -> list[str]:
    if isinstance(region, Box):
        return (
            ["region box"]
            + _vector_lines("lower", region.lower)
            + _vector_lines("upper", region.upper)
        )
    if isinstance(region, Cardinality):
        return ["region cardinality", f"scalar budget {_fmt(region.budget)}", f"scalar dim {region.dim}"]
    if isinstance(region, Polytope):
        return (
            ["region polytope"]
            + _matrix_lines("A", region.A)
            + _vector_lines("b", region.b)
            + _vector_lines("u", region.u)
        )
    raise TypeError(f"cannot serialize region of type {type(region).__name__}")


def dumps_instance(spec: InstanceSpec) -> str:
    lines = [f"fwsubmix-instance {FORMAT_VERSION}", f"lambda {_fmt(spec.lam)}"]
    flags = " ".join(
        f"{name}={int(getattr(spec, name))}" for name in _FLAG_NAMES
    )
    lines.append(f"flags {flags}")
    lines += _objective_lines("g", spec.g)
    lines += _objective_lines("c", spec.c)
    lines += _region_lines(spec.region)
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_instance(path, spec: InstanceSpec) -> None:
    Path(path).write_text(dumps_instance(spec))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Reader:
    def __init__(self, text: str):
        self._lines = text.splitlines()
        self._pos = 0

    def next(self) -> tuple[int, list[str]]:
        while self._pos < len(self._lines):
            self._pos += 1
            raw = self._lines[self._pos - 1].strip()
            if raw and not raw.startswith("#"):
                return self._pos, raw.split()
        raise ParseError("unexpected end of file", self._pos)


def _parse_floats(tokens: list[str], count: int, line: int) -> np.ndarray:
    if len(tokens) != count:
        raise ParseError(f"expected {count} values, found {len(tokens)}", line)
    try:
        return np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError as exc:
        raise ParseError(f"bad numeric value ({exc})", line) from None


def _expect_matrix(reader: _Reader, name: str) -> np.ndarray:
    line, tokens = reader.next()
    if len(tokens) != 4 or tokens[0] != "matrix" or tokens[1] != name:
        raise ParseError(f"expected 'matrix {name} <rows> <cols>'", line)
    try:
        rows, cols = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise ParseError("matrix dimensions must be integers", line) from None
    if rows < 1 or cols < 1:
        raise ParseError("matrix dimensions must be positive", line)
    data = np.empty((rows, cols))
    for r in range(rows):
        line, tokens = reader.next()
        data[r] = _parse_floats(tokens, cols, line)
    return data


def _expect_vector(reader: _Reader, name: str) -> np.ndarray:
    line, tokens = reader.next()
    if len(tokens) != 3 or tokens[0] != "vector" or tokens[1] != name:
        raise ParseError(f"expected 'vector {name} <len>'", line)
    try:
        length = int(tokens[2])
    except ValueError:
        raise ParseError("vector length must be an integer", line) from None
    line, tokens = reader.next()
    return _parse_floats(tokens, length, line)


def _expect_scalar(reader: _Reader, name: str) -> float:
    line, tokens = reader.next()
    if len(tokens) != 3 or tokens[0] != "scalar" or tokens[1] != name:
        raise ParseError(f"expected 'scalar {name} <value>'", line)
    try:
        return float(tokens[2])
    except ValueError:
        raise ParseError(f"bad scalar value {tokens[2]!r}", line) from None


def _parse_objective(reader: _Reader, role: str):
    line, tokens = reader.next()
    if len(tokens) != 3 or tokens[0] != "objective" or tokens[1] != role:
        raise ParseError(f"expected 'objective {role} <kind>'", line)
    kind = tokens[2]
    if kind == "quadratic":
        H = _expect_matrix(reader, "H")
        h = _expect_vector(reader, "h")
        c = _expect_scalar(reader, "c")
        return QuadraticObjective(H, h, c)
    if kind == "softmax":
        return SoftmaxExtension(_expect_matrix(reader, "L"))
    if kind == "similarity":
        return SimilarityConcave(_expect_matrix(reader, "L"))
    if kind == "doptimal":
        return DOptimalDesign(_expect_matrix(reader, "Y"))
    if kind == "logbarrier":
        scale = _expect_scalar(reader, "scale")
        dim = int(_expect_scalar(reader, "dim"))
        return LogBarrier(scale, dim)
    raise ParseError(f"unknown objective kind {kind!r}", line)


def _parse_region(reader: _Reader):
    line, tokens = reader.next()
    if len(tokens) != 2 or tokens[0] != "region":
        raise ParseError("expected 'region <kind>'", line)
    kind = tokens[1]
    if kind == "box":
        lower = _expect_vector(reader, "lower")
        upper = _expect_vector(reader, "upper")
        return Box(lower, upper)
    if kind == "cardinality":
        budget = _expect_scalar(reader, "budget")
        dim = int(_expect_scalar(reader, "dim"))
        return Cardinality(budget, dim)
    if kind == "polytope":
        A = _expect_matrix(reader, "A")
        b = _expect_vector(reader, "b")
        u = _expect_vector(reader, "u")
        return Polytope(A, b, u)
    raise ParseError(f"unknown region kind {kind!r}", line)


def loads_instance(text: str) -> InstanceSpec:
    reader = _Reader(text)
    line, tokens = reader.next()
    if len(tokens) != 2 or tokens[0] != "fwsubmix-instance":
        raise ParseError("missing 'fwsubmix-instance <version>' header", line)
    if tokens[1] != str(FORMAT_VERSION):
        raise ParseError(f"unsupported format version {tokens[1]!r}", line)

    line, tokens = reader.next()
    if len(tokens) != 2 or tokens[0] != "lambda":
        raise ParseError("expected 'lambda <value>'", line)
    try:
        lam = float(tokens[1])
    except ValueError:
        raise ParseError(f"bad lambda value {tokens[1]!r}", line) from None

    line, tokens = reader.next()
    if tokens[0] != "flags" or len(tokens) != 1 + len(_FLAG_NAMES):
        raise ParseError("expected 'flags g_monotone=<0|1> ...'", line)
    flags = {}
    for tok, name in zip(tokens[1:], _FLAG_NAMES):
        key, _, value = tok.partition("=")
        if key != name or value not in ("0", "1"):
            raise ParseError(f"expected flag {name}=<0|1>, found {tok!r}", line)
        flags[name] = value == "1"

    g = _parse_objective(reader, "g")
    c = _parse_objective(reader, "c")
    region = _parse_region(reader)

    line, tokens = reader.next()
    if tokens != ["end"]:
        raise ParseError("expected 'end'", line)

    if g.dim != region.dim or c.dim != region.dim:
        raise ParseError(
            f"objective dimensions ({g.dim}, {c.dim}) do not match region dimension {region.dim}"
        )
    return InstanceSpec(g=g, c=c, region=region, lam=lam, **flags)


def load_instance(path) -> InstanceSpec:
    return loads_instance(Path(path).read_text())
