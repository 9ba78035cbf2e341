"""Run reports: what was asked, what came out, and whether it checks out."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction


def digest(*chunks: str | bytes) -> str:
    h = hashlib.sha256()
    for c in chunks:
        h.update(c.encode() if isinstance(c, str) else c)
        h.update(b"\0")
    return h.hexdigest()


def _plain(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    return x


@dataclass
class Verdict:
    name: str
    status: str  # pass | fail | info
    detail: str = ""


@dataclass
class RunReport:
    command: str
    inputs_digest: str = digest("")
    outputs: list[tuple[str, object]] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    text: str = ""  # free-form payload, e.g. a serialized square

    def add(self, key: str, value) -> None:
        self.outputs.append((key, value))

    def verdict(self, name: str, ok: bool | None, detail: str = "") -> None:
        status = "info" if ok is None else ("pass" if ok else "fail")
        self.verdicts.append(Verdict(name, status, detail))

    @property
    def failed(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == "fail"]

    def render(self, fmt: str = "text", timing: bool = True) -> str:
        if fmt == "records":
            return self._records(timing)
        if fmt != "text":
            raise ValueError(f"unknown format {fmt!r}")
        lines = []
        if self.text:
            lines.append(self.text.rstrip("\n"))
        for key, value in self.outputs:
            v = _plain(value)
            lines.append(f"{key}: {v}" if key else str(v))
        for v in self.verdicts:
            lines.append(f"[{v.status.upper()}] {v.name}" + (f" - {v.detail}" if v.detail else ""))
        if timing:
            for k, t in self.timing.items():
                lines.append(f"# time {k}: {t:.3f}s")
        return "\n".join(lines) + "\n"

    def _records(self, timing: bool) -> str:
        recs = [{"type": "run", "command": self.command, "inputs_sha256": self.inputs_digest}]
        if self.text:
            recs.append({"type": "payload", "text": self.text})
        recs += [{"type": "output", "key": k, "value": _plain(v)} for k, v in self.outputs]
        recs += [{"type": "verdict", "name": v.name, "status": v.status, "detail": v.detail} for v in self.verdicts]
        if timing:
            recs += [{"type": "timing", "key": k, "seconds": round(t, 6)} for k, t in self.timing.items()]
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in recs)
