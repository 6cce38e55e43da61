"""Identity registry and exact verification runner.

Registry file format: one record per logical line, fields separated by
``|``::

    name | params | ring | order | lhs | rhs | anchor

Lines starting with ``#`` are comments; a line starting with whitespace
continues the previous record.  ``params`` is a ``;``-separated list of
``name=values`` clauses (``r=0..5``, ``e=2,4,8``, ``z=2*q,3*q^2``) whose
Cartesian product gives the bindings, plus optional ``if <condition>``
clauses.  ``{...}`` in the expression fields is a small integer/rational
template expression over the parameters.
"""

from __future__ import annotations

import ast
import fnmatch
import itertools
import json
import math
import operator
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import QMockError, UsageError
from .evaluate import Evaluator
from .expr import parse
from .ring import RING_BY_NAME, format_coeff
from .strings import kappa

RING_ALIASES = {"rat": 1, "Q": 1, "gauss": 4, "Qi": 4, "eisenstein": 3, "Qw": 3}


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    params: tuple  # ((name, (values...)), ...) plus ("if", expr) clauses
    conductor: int
    order: Fraction
    lhs: str
    rhs: str
    anchor: str

    def bindings(self) -> list[dict]:
        names = [n for n, _ in self.params if n != "if"]
        pools = [vals for n, vals in self.params if n != "if"]
        conds = [vals for n, vals in self.params if n == "if"]
        out = []
        for combo in itertools.product(*pools):
            env = dict(zip(names, combo))
            if all(_template_value(c, env) for c in conds):
                out.append(env)
        return out

    def instantiate(self, env: dict) -> tuple[str, str]:
        return expand_template(self.lhs, env), expand_template(self.rhs, env)


@dataclass
class VerifyReport:
    name: str
    params: dict
    status: str  # pass | mismatch | error
    order: Fraction
    exponent: Fraction | None = None
    lhs_coeff: str | None = None
    rhs_coeff: str | None = None
    message: str | None = None
    elapsed: float = field(default=0.0, compare=False)

    def sort_key(self):
        return (self.name, tuple((k, (0, v, "") if isinstance(v, int) else (1, 0, str(v)))
                                 for k, v in sorted(self.params.items())))

    def to_json(self) -> dict:
        """Deterministic fields only; wall time is left out so reports compare byte for byte."""
        d = {"name": self.name, "params": {k: str(v) for k, v in self.params.items()},
             "status": self.status, "order": str(self.order)}
        if self.status == "mismatch":
            d.update(exponent=str(self.exponent), lhs=self.lhs_coeff, rhs=self.rhs_coeff)
        if self.status == "error":
            d["message"] = self.message
        return d

    def line(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"{self.status.upper():8s} {self.name}" + (f" [{ps}]" if ps else "") + f" to q^{self.order}"
        if self.status == "mismatch":
            head += f": first difference at q^({self.exponent}), lhs {self.lhs_coeff} vs rhs {self.rhs_coeff}"
        elif self.status == "error":
            head += f": {self.message}"
        return head


@dataclass
class SuiteReport:
    reports: list[VerifyReport]

    @property
    def failures(self) -> int:
        return sum(r.status != "pass" for r in self.reports)

    def to_json_text(self) -> str:
        return json.dumps([r.to_json() for r in self.reports], indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# templates

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: lambda a, b: Fraction(a) / Fraction(b), ast.FloorDiv: operator.floordiv,
           ast.Mod: operator.mod, ast.Pow: operator.pow}
_CMPS = {ast.Lt: operator.lt, ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
         ast.Eq: operator.eq, ast.NotEq: operator.ne}
_FUNCS = {"kappa": kappa, "floor": math.floor, "binom": math.comb, "abs": abs}


def _eval_ast(node, env):
    if isinstance(node, ast.Expression):
        return _eval_ast(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise UsageError(f"unknown template variable {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_ast(node.left, env), _eval_ast(node.right, env))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd, ast.Not)):
        v = _eval_ast(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else (not v if isinstance(node.op, ast.Not) else v)
    if isinstance(node, ast.Compare):
        left = _eval_ast(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            right = _eval_ast(comp, env)
            if not _CMPS[type(op)](left, right):
                return False
            left = right
        return True
    if isinstance(node, ast.BoolOp):
        vals = [_eval_ast(v, env) for v in node.values]
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        return _FUNCS[node.func.id](*(_eval_ast(a, env) for a in node.args))
    raise UsageError(f"unsupported template syntax: {ast.dump(node)}")


def _template_value(text: str, env: dict):
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad template expression {text!r}") from exc
    return _eval_ast(tree, env)


def _render(v) -> str:
    if isinstance(v, str):
        return f"({v})"
    v = Fraction(v)
    return f"({v.numerator})" if v.denominator == 1 else f"({v.numerator}/{v.denominator})"


def expand_template(text: str, env: dict) -> str:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "{":
            close = text.index("}", i)
            out.append(_render(_template_value(text[i + 1:close], env)))
            i = close + 1
        else:
            out.append(c)
            i += 1
    return "".join(out)


# ---------------------------------------------------------------------------
# registry file


def _parse_values(text: str) -> tuple:
    text = text.strip()
    if ".." in text and "," not in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    vals = []
    for v in text.split(","):
        v = v.strip()
        try:
            vals.append(int(v))
        except ValueError:
            vals.append(v)
    return tuple(vals)


def parse_params(text: str) -> tuple:
    params = []
    for clause in text.split(";"):
        clause = clause.strip()
        if not clause or clause == "-":
            continue
        if clause.startswith("if "):
            params.append(("if", clause[3:]))
            continue
        name, _, vals = clause.partition("=")
        if not _ or not name.strip().isidentifier():
            raise UsageError(f"bad parameter clause {clause!r}")
        params.append((name.strip(), _parse_values(vals)))
    return tuple(params)


def parse_ring(text: str) -> int:
    text = text.strip()
    if text in RING_ALIASES:
        return RING_ALIASES[text]
    if text in RING_BY_NAME:
        return RING_BY_NAME[text]
    raise UsageError(f"unknown ring {text!r}; use rat, gauss or eisenstein")


def parse_registry(text: str) -> list[IdentityRecord]:
    logical: list[str] = []
    for raw in text.splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if raw[0].isspace() and logical:
            logical[-1] += " " + raw.strip()
        else:
            logical.append(raw.strip())
    records = []
    for line in logical:
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 7:
            raise UsageError(f"registry line needs 7 fields, got {len(parts)}: {line[:60]}...")
        name, params, ring, order, lhs, rhs, anchor = parts
        records.append(IdentityRecord(name, parse_params(params), parse_ring(ring), Fraction(order), lhs, rhs,
                                      anchor))
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        raise UsageError("duplicate record names in registry")
    return records


_REGISTRY: list[IdentityRecord] | None = None


def load_registry(path: str | Path | None = None) -> list[IdentityRecord]:
    global _REGISTRY
    if path is not None:
        return parse_registry(Path(path).read_text())
    if _REGISTRY is None:
        _REGISTRY = parse_registry(resources.files("qmock").joinpath("data/identities.txt").read_text())
    return _REGISTRY


def find_record(name: str) -> IdentityRecord:
    for rec in load_registry():
        if rec.name == name:
            return rec
    raise UsageError(f"no identity named {name!r}")


# ---------------------------------------------------------------------------
# running


def check_texts(name: str, params: dict, lhs: str, rhs: str, order, conductor: int = 1) -> VerifyReport:
    """Evaluate both sides to ``order`` and compare exactly."""
    order = Fraction(order)
    start = time.perf_counter()
    report = VerifyReport(name, dict(params), "pass", order)
    try:
        ev = Evaluator(conductor)
        left = ev(parse(lhs), order)
        right = ev(parse(rhs), order)
        mm = left.first_mismatch(right, order)
        if mm is not None:
            report.status = "mismatch"
            report.exponent = mm.exponent
            report.lhs_coeff = format_coeff(mm.left)
            report.rhs_coeff = format_coeff(mm.right)
    except QMockError as exc:
        report.status = "error"
        report.message = f"{type(exc).__name__}: {exc}"
    report.elapsed = time.perf_counter() - start
    return report


def run_binding(rec: IdentityRecord, env: dict, order=None) -> VerifyReport:
    T = rec.order if order is None else Fraction(order)
    try:
        lhs, rhs = rec.instantiate(env)
    except QMockError as exc:
        return VerifyReport(rec.name, env, "error", T, message=f"{type(exc).__name__}: {exc}")
    return check_texts(rec.name, env, lhs, rhs, T, rec.conductor)


def run_identity(rec: IdentityRecord, order=None) -> list[VerifyReport]:
    """One report per parameter binding."""
    return [run_binding(rec, env, order) for env in rec.bindings()]


def _task(args):
    rec, env, order = args
    return run_binding(rec, env, order)


def select(pattern: str = "*", registry: list[IdentityRecord] | None = None) -> list[IdentityRecord]:
    registry = load_registry() if registry is None else registry
    return [r for r in registry if fnmatch.fnmatchcase(r.name, pattern)]


def run_suite(pattern: str = "*", order=None, jobs: int = 1,
              registry: list[IdentityRecord] | None = None) -> SuiteReport:
    """Run every matching record; the report order does not depend on scheduling."""
    if jobs < 1:
        raise UsageError("jobs must be >= 1")
    tasks = [(rec, env, order) for rec in select(pattern, registry) for env in rec.bindings()]
    if jobs == 1 or len(tasks) <= 1:
        reports = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_task, tasks, chunksize=1))
    reports.sort(key=VerifyReport.sort_key)
    return SuiteReport(reports)
