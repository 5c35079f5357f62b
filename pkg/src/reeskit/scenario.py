"""Scenario files, the step interpreter and plain-text reports.

A scenario is a JSON document::

    {"name": "...", "field": [2, 1], "variables": ["Z", "X", "Y"],
     "transversal": "Z", "generators": [{"poly": "Z^2+Y^7+X^4*Y", "weight": 2}],
     "steps": [{"op": "close"}, {"op": "blowup", "center": ["Z", "X", "Y"], "chart": "Y"}]}

Field elements of GF(p^k) are written as integers 0..q-1 whose base-p digits
are the coefficients in the field generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import blowup as bu
from .cone import initial_ideal, vertex_space
from .errors import ReesError, StepError
from .field import GF, FieldCtx
from .monomial import divisor_exponents, freeze_exponents, lift_resolution, resolve_monomial, slope_at_point, strong_monomial_algebra
from .parse import parse_poly
from .poly import RingCtx
from .rees import ABSOLUTE, RELATIVE, ReesAlgebra, same_algebra, sing_points

REPORT_HEADER = "reeskit-report v1"
BUILTIN = ("hauser", "txyz")


@dataclass(frozen=True)
class Scenario:
    name: str
    field: tuple[int, int]
    variables: tuple[str, ...]
    transversal: str | None
    generators: tuple[tuple[str, int], ...]
    steps: tuple[dict, ...] = ()

    @classmethod
    def from_dict(cls, data: dict) -> Scenario:
        p, k = (list(data["field"]) + [1])[:2] if isinstance(data["field"], list) else (data["field"], 1)
        gens = tuple((g["poly"], int(g["weight"])) for g in data["generators"])
        steps = tuple(dict(s) for s in data.get("steps", ()))
        for i, s in enumerate(steps):
            if s.get("op") not in OPS:
                raise ValueError(f"step {i}: unknown op {s.get('op')!r}")
        return cls(data.get("name", "scenario"), (int(p), int(k)), tuple(data["variables"]),
                   data.get("transversal"), gens, steps)

    @classmethod
    def load(cls, path: str | Path) -> Scenario:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "field": list(self.field),
            "variables": list(self.variables),
            "transversal": self.transversal,
            "generators": [{"poly": g, "weight": n} for g, n in self.generators],
            "steps": [dict(s) for s in self.steps],
        }

    def with_field(self, p: int, k: int = 1) -> Scenario:
        return replace(self, field=(p, k))

    def ring(self) -> RingCtx:
        return RingCtx(GF(*self.field), self.variables)

    def algebra(self) -> ReesAlgebra:
        R = self.ring()
        return ReesAlgebra.from_pairs(R, [(parse_poly(t, R), n) for t, n in self.generators])


def builtin(name: str) -> Scenario:
    if name not in BUILTIN:
        raise KeyError(name)
    text = resources.files("reeskit").joinpath(f"data/{name}.json").read_text(encoding="utf-8")
    return Scenario.from_dict(json.loads(text))


def golden_report(name: str) -> str:
    return resources.files("reeskit").joinpath(f"data/{name}.golden.txt").read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# formatting


def _field_name(F: FieldCtx) -> str:
    return f"GF({F.p})" if F.k == 1 else f"GF({F.p}^{F.k})"


def _gens_block(label: str, G: ReesAlgebra | None) -> list[str]:
    if G is None:
        return [f"{label}: -"]
    if G.is_zero():
        return [f"{label}: 0"]
    return [f"{label}:"] + [f"  {wg}" for wg in G.gens]


def snapshot(state: bu.ResolutionState) -> list[str]:
    lines = [f"chart: {', '.join(state.ring.vars)}  blowups={state.chart.blowups}"]
    if state.chart.divisors:
        lines.append("divisors:")
        lines += [f"  {d}" for d in state.chart.divisors]
    else:
        lines.append("divisors: none")
    lines += _gens_block("G", state.algebra)
    if state.z is not None:
        lines += _gens_block("R", state.elimination())
    return lines


def _point(state: bu.ResolutionState, spec) -> tuple[int, ...]:
    if spec in (None, "origin"):
        return (0,) * state.ring.nvars
    if isinstance(spec, dict):
        return tuple(int(spec.get(v, 0)) for v in state.ring.vars)
    return tuple(int(c) for c in spec)


def _expect_algebra(ring: RingCtx, pairs) -> ReesAlgebra:
    return ReesAlgebra.from_pairs(ring, [(parse_poly(t, ring), int(n)) for t, n in pairs])


# ---------------------------------------------------------------------------
# the step interpreter


@dataclass
class Outcome:
    lines: list[str]
    failures: list[str] = field(default_factory=list)
    changed: bool = False


class Runner:
    """Holds a resolution state and applies step records to it; keeps a stack for undo."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.state = bu.ResolutionState.start(scenario.algebra(), scenario.transversal)
        self.stack: list[bu.ResolutionState] = []

    def apply(self, step: dict) -> Outcome:
        op = step.get("op")
        if op not in OPS:
            raise ValueError(f"unknown op {op!r}")
        before = self.state
        out = OPS[op](self, step)
        if self.state is not before:
            self.stack.append(before)
            out.changed = True
            out.lines += snapshot(self.state)
        return out

    def undo(self) -> bool:
        if not self.stack:
            return False
        self.state = self.stack.pop()
        return True

    # -- ops ------------------------------------------------------------

    def _close(self, step):
        mode = step.get("mode", ABSOLUTE)
        if mode not in (ABSOLUTE, RELATIVE):
            raise ValueError(f"unknown closure mode {mode!r}")
        self.state = bu.close_state(self.state, mode)
        return Outcome([])

    def _relclose(self, step):
        return self._close({"mode": RELATIVE})

    def _commutes_line(self, center, chart) -> Outcome:
        z = self.state.z
        if z is None or chart == z or z not in center:
            return Outcome([])
        ok = bu.check_elim_commutes(self.state.algebra, z, center, chart)
        out = Outcome([f"commutes: {'yes' if ok else 'no'}"])
        if not ok:
            out.failures.append(f"elimination does not commute with the blow-up at <{','.join(center)}>")
        return out

    def _blowup(self, step):
        center, chart = tuple(step["center"]), step["chart"]
        out = self._commutes_line(center, chart)
        self.state = bu.blowup_state(self.state, center, chart)
        return out

    def _lift(self, step):
        low, chart = tuple(step["center"]), step["chart"]
        C = bu.lift_center(low, self.state.algebra, self.state.z)
        lines = [f"lifted center: {C}"]
        state = self.state
        if C.translations:
            state = bu.substitute_state(state, dict(C.translations), note=f"{state.z} -> {C.translations[0][1]}")
        saved, self.state = self.state, state
        try:
            out = self._commutes_line(C.vars, chart)
        finally:
            self.state = saved
        self.state = bu.lift_state(self.state, low, chart)
        out.lines = lines + out.lines
        return out

    def _translate(self, step):
        self.state = bu.translate_var(self.state, step["var"], int(step.get("shift", 1)), step.get("rename"))
        return Outcome([self.state.chart.history[-1].note])

    def _clean(self, step):
        self.state, t = bu.clean_state(self.state)
        if t.is_zero():
            return Outcome(["clean: already clean"])
        return Outcome([f"clean: {self.state.z} -> {self.state.z} - ({t})"])

    def _exponents(self, step):
        lines = ["exponents:"]
        for d in self.state.chart.divisors:
            h, alpha, slope = divisor_exponents(self.state, d)
            frozen = "" if d.h is None else f" frozen={d.h}"
            lines.append(f"  {d.name}: h={h} alpha={alpha} slope={slope}{frozen}")
        self.state = freeze_exponents(self.state)
        return Outcome(lines)

    def _monomial(self, step):
        M = strong_monomial_algebra(self.state, bool(step.get("local", False)))
        self.state = replace(self.state, monomial=M)
        return Outcome([f"M: {M}"] + [f"note: {n}" for n in M.notes])

    def _resolve(self, step):
        local = bool(step.get("local", False))
        state = freeze_exponents(self.state)
        M = strong_monomial_algebra(state, local)
        centers = resolve_monomial(M, state.chart.blowups + 1)
        lines = [f"M: {M}"] + [f"note: {n}" for n in M.notes]
        lines.append("centers: " + (" ".join(f"{c}@{c.chart}" for c in centers) or "none"))
        before = len(state.notes)
        self.state = lift_resolution(state, centers)
        lines += [f"note: {n}" for n in self.state.notes[before:]]
        return Outcome(lines)

    def _tau(self, step):
        pt = _point(self.state, step.get("point"))
        target = step.get("target", "G")
        if target == "R":
            G = self.state.elimination()
            keep = [i for i, v in enumerate(self.state.ring.vars) if v != self.state.z]
            pt = tuple(pt[i] for i in keep)
        else:
            G = self.state.algebra
        I = initial_ideal(G, pt)
        V = vertex_space(G, pt)
        return Outcome([f"tau[{target}] at {pt}: {V.tau}", f"  initial ideal: {I}"])

    def _slope(self, step):
        found = self.state.monic()
        if found is None:
            raise ValueError("no monic generator")
        pt = _point(self.state, step.get("point"))
        return Outcome([f"slope at {pt}: {slope_at_point(found[1], pt)}"])

    def _sing(self, step):
        p, k = (list(step.get("field", self.scenario.field)) + [1])[:2]
        F = GF(p, k)
        target = step.get("target", "G")
        G = self.state.elimination() if target == "R" else self.state.algebra
        pts = sorted(sing_points(G, F))
        return Outcome([f"sing[{target}] over {_field_name(F)}: {len(pts)} points"] +
                       [f"  {pt}" for pt in pts])

    def _elim(self, step):
        return Outcome(_gens_block("R", self.state.elimination()))

    def _compare(self, step):
        target = step["target"]
        label = step.get("label", target)
        known = bool(step.get("known_discrepancy", False))
        expect = step["expect"]
        if target in ("G", "R"):
            got = self.state.algebra if target == "G" else self.state.elimination()
            want = _expect_algebra(got.ring, expect)
            ok = same_algebra(got, want)
            shown_got, shown_want = str(got), str(want)
        elif target == "h":
            got = {d.name: d.h for d in self.state.chart.divisors if d.name in expect}
            ok = got == {k: int(v) for k, v in expect.items()}
            shown_got, shown_want = json.dumps(got, sort_keys=True), json.dumps(expect, sort_keys=True)
        elif target == "M":
            got = str(self.state.monomial)
            ok, shown_got, shown_want = got == expect, got, expect
        elif target == "monic":
            found = self.state.monic()
            got = found[1].poly() if found else None
            ok = got == parse_poly(expect, self.state.ring)
            shown_got, shown_want = str(got), str(parse_poly(expect, self.state.ring))
        else:
            raise ValueError(f"unknown compare target {target!r}")
        if ok:
            return Outcome([f"compare {label}: match"])
        if known:
            return Outcome([f"compare {label}: known discrepancy", f"  expected: {shown_want}", f"  derived:  {shown_got}"])
        return Outcome([f"compare {label}: MISMATCH", f"  expected: {shown_want}", f"  derived:  {shown_got}"],
                       failures=[f"{label} differs"])


OPS: dict[str, Callable[[Runner, dict], Outcome]] = {
    "close": Runner._close,
    "relclose": Runner._relclose,
    "blowup": Runner._blowup,
    "lift": Runner._lift,
    "translate": Runner._translate,
    "clean": Runner._clean,
    "exponents": Runner._exponents,
    "monomial": Runner._monomial,
    "resolve": Runner._resolve,
    "tau": Runner._tau,
    "slope": Runner._slope,
    "sing": Runner._sing,
    "elim": Runner._elim,
    "compare": Runner._compare,
}


def describe(step: dict) -> str:
    args = " ".join(f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(step.items()) if k != "op")
    return f"{step['op']} {args}".rstrip()


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    lines: list[str]
    verdict: str
    failures: list[str] = field(default_factory=list)
    error: StepError | None = None
    state: Any = None

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    @property
    def ok(self) -> bool:
        return self.verdict == "PASS"


def run_scenario(s: Scenario, log: Callable[[str], None] | None = None) -> Report:
    """Execute the steps in order; errors stop the run and are recorded in the report."""
    runner = Runner(s)
    F = runner.state.ring.field
    lines = [
        REPORT_HEADER,
        f"scenario: {s.name}",
        f"field: {_field_name(F)}",
        f"variables: {', '.join(s.variables)}",
        f"transversal: {s.transversal or '-'}",
        "== step 0: initial",
    ] + snapshot(runner.state)
    failures: list[str] = []
    error = None
    for i, step in enumerate(s.steps, start=1):
        head = f"== step {i}: {describe(step)}"
        lines.append(head)
        if log:
            log(head)
        try:
            out = runner.apply(step)
        except (ReesError, ValueError, KeyError) as exc:
            error = StepError(i, exc)
            lines.append(f"error: {error}")
            break
        lines += out.lines
        failures += [f"step {i}: {f}" for f in out.failures]
    verdict = "ERROR" if error else ("FAIL" if failures else "PASS")
    lines += [f"failure: {f}" for f in failures]
    lines.append(f"verdict: {verdict}")
    return Report(lines, verdict, failures, error, runner.state)
