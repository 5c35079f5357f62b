"""Interactive stepping loop over the same step interpreter as scenario files."""

from __future__ import annotations

import json
import shlex
import sys
from dataclasses import replace
from pathlib import Path
from typing import TextIO

from .errors import ReesError
from .scenario import BUILTIN, Runner, Scenario, builtin, describe, snapshot

HELP = """\
commands:
  load <hauser|txyz|file.json>   load and close a built-in or scenario file (steps not run)
  show                           current chart, divisors, G and R
  chart                          coordinates, divisors and substitution history
  close [relative]               differential closure
  blowup Z,X,Y chart=Y           blow up a coordinate center, keep one chart
  lift Y,X1 chart=X1             lift a center of R and blow up
  translate X [shift=1] [rename=X1]
  clean                          remove p^e-th powers from the monic generator
  elim                           the elimination algebra
  exponents                      freeze h and alpha for new divisors
  monomial [local]               the strong monomial algebra
  resolve [local]                resolve the monomial algebra and lift it
  tau [origin|a,b,..] [R]        tau at a point (of R with the flag)
  slope [origin|a,b,..]          slope of the monic generator at a point
  sing [p[,k]] [R]               enumerate the singular locus
  steps                          the steps so far, as scenario JSON
  undo                           revert the last state change
  help | quit"""


def _csv(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def _point(text: str):
    return "origin" if text == "origin" else [int(t) for t in _csv(text)]


def to_step(cmd: str, args: list[str]) -> dict:
    """Translate a REPL command into a scenario step record."""
    pos = [a for a in args if "=" not in a]
    kw = dict(a.split("=", 1) for a in args if "=" in a)
    if cmd in ("blowup", "lift"):
        if not pos or "chart" not in kw:
            raise ValueError(f"usage: {cmd} V1,V2,... chart=V")
        return {"op": cmd, "center": _csv(pos[0]), "chart": kw["chart"]}
    if cmd == "close":
        return {"op": "relclose"} if "relative" in pos else {"op": "close"}
    if cmd == "translate":
        if not pos:
            raise ValueError("usage: translate VAR [shift=c] [rename=NEW]")
        step = {"op": "translate", "var": pos[0], "shift": int(kw.get("shift", pos[1] if len(pos) > 1 else 1))}
        rename = kw.get("rename", pos[2] if len(pos) > 2 else None)
        if rename:
            step["rename"] = rename
        return step
    if cmd in ("monomial", "resolve"):
        return {"op": cmd, "local": "local" in pos}
    if cmd in ("tau", "slope"):
        step = {"op": cmd, "point": _point(next((p for p in pos if p != "R"), "origin"))}
        if cmd == "tau" and "R" in pos:
            step["target"] = "R"
        return step
    if cmd == "sing":
        step = {"op": "sing"}
        fields = [p for p in pos if p != "R"]
        if fields:
            step["field"] = [int(t) for t in _csv(fields[0])]
        if "R" in pos:
            step["target"] = "R"
        return step
    if cmd in ("clean", "elim", "exponents"):
        return {"op": cmd}
    raise ValueError(f"unknown command {cmd!r} (try help)")


class Repl:
    def __init__(self):
        self.runner: Runner | None = None
        self.steps: list[tuple[dict, bool]] = []  # (step, changed the state)
        self.done = False

    def scenario(self) -> Scenario | None:
        """The scenario whose steps reproduce the current state."""
        if self.runner is None:
            return None
        return replace(self.runner.scenario, steps=tuple(step for step, _ in self.steps))

    def _load(self, what: str) -> str:
        s = builtin(what) if what in BUILTIN else Scenario.load(Path(what))
        self.runner = Runner(replace(s, steps=()))
        step = {"op": "close"}
        self.runner.apply(step)
        self.steps = [(step, True)]
        return "\n".join([f"loaded {s.name} (differentially closed)"] + snapshot(self.runner.state))

    def execute(self, line: str) -> str:
        try:
            words = shlex.split(line)
        except ValueError as exc:
            return f"error: {exc}"
        if not words:
            return ""
        cmd, args = words[0], words[1:]
        try:
            if cmd in ("quit", "exit"):
                self.done = True
                return ""
            if cmd == "help":
                return HELP
            if cmd == "load":
                if not args:
                    return "usage: load <hauser|txyz|file.json>"
                return self._load(args[0])
            if self.runner is None:
                return "nothing loaded (try: load hauser)"
            if cmd == "show":
                return "\n".join(snapshot(self.runner.state))
            if cmd == "chart":
                st = self.runner.state
                lines = [f"chart: {', '.join(st.ring.vars)}  blowups={st.chart.blowups}"]
                lines += [f"  {d}" for d in st.chart.divisors]
                for h in st.chart.history:
                    detail = f"<{','.join(h.center)}> chart {h.divide_by}" if h.kind == "blowup" else (h.note or h.mode)
                    lines.append(f"  {h.kind}: {detail}")
                lines += [f"note: {n}" for n in st.notes]
                return "\n".join(lines)
            if cmd == "undo":
                if not self.runner.undo():
                    return "nothing to undo"
                while self.steps and not self.steps.pop()[1]:
                    pass
                return "\n".join(["undone"] + snapshot(self.runner.state))
            if cmd == "steps":
                return json.dumps([step for step, _ in self.steps], indent=1)
            step = to_step(cmd, args)
            out = self.runner.apply(step)
            self.steps.append((step, out.changed))
            return "\n".join([f"> {describe(step)}"] + out.lines)
        except (ReesError, ValueError, KeyError, OSError) as exc:
            return f"error: {type(exc).__name__}: {exc}"

    def loop(self, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout, prompt: str = "reeskit> ") -> int:
        interactive = stdin.isatty()
        while not self.done:
            if interactive:
                stdout.write(prompt)
                stdout.flush()
            line = stdin.readline()
            if not line:
                break
            out = self.execute(line.strip())
            if out:
                stdout.write(out + "\n")
        return 0
