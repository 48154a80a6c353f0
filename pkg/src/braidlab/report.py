"""Report assembly and serialization (json, csv, table).

JSON is canonical: keys sorted, checks sorted by name, no timing unless asked
for, so equal configs give byte-identical output.  The layout is described by
``report_schema.json`` next to this module.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from braidlab.cyclotomic import Cyclotomic

SCHEMA_VERSION = "1.0"


def scalar(value):
    """{"exact": [coefficients, order] or null, "approx": [re, im]}."""
    if isinstance(value, Cyclotomic):
        z = value.to_complex()
        exact = [[str(c) for c in value.coefficients()], value.order]
    else:
        z = complex(value)
        exact = None
    return {"exact": exact, "approx": [_clean(z.real), _clean(z.imag)]}


def angle(q):
    """Angle q*pi as {"pi_rational": "p/q", "approx": radians}."""
    q = Fraction(q)
    return {"pi_rational": str(q), "approx": _clean(float(q) * math.pi)}


def matrix(mat):
    """Nested list of serialized scalars."""
    if isinstance(mat, Cyclotomic):
        return [[scalar(mat[i, j]) for j in range(mat.shape[1])] for i in range(mat.shape[0])]
    mat = np.asarray(mat)
    return [[scalar(x) for x in row] for row in mat]


def _clean(x):
    # round away float noise so -0.0 / 1e-17 do not leak into fixtures
    x = round(float(x), 12)
    return 0.0 if x == 0 else x


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = None
    payload: dict = field(default_factory=dict)
    error: str = None

    def to_dict(self):
        out = {"name": self.name, "passed": bool(self.passed), "residual": self.residual, "payload": self.payload}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class Report:
    command: str
    config: dict
    checks: list = field(default_factory=list)
    duration: float = None

    def add(self, check):
        self.checks.append(check)

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        from braidlab import __version__

        checks = sorted(self.checks, key=lambda c: c.name)
        names = [c.name for c in checks]
        if len(set(names)) != len(names):
            raise ValueError("duplicate check names in report")
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool": "braidlab",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "checks": [c.to_dict() for c in checks],
            "summary": {
                "total": len(checks),
                "passed": sum(c.passed for c in checks),
                "failed": sum(not c.passed for c in checks),
                "all_passed": self.all_passed,
            },
        }
        if self.duration is not None:
            out["duration_seconds"] = self.duration
        return out


def to_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def to_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["command", "name", "passed", "residual", "error"])
    for c in sorted(report.checks, key=lambda c: c.name):
        w.writerow([report.command, c.name, c.passed, "" if c.residual is None else c.residual, c.error or ""])
    return buf.getvalue()


def _brief(payload):
    keys = ("energies", "plateau", "order", "note", "match", "violations", "angles")
    parts = []
    for k in keys:
        if k in payload:
            v = payload[k]
            if isinstance(v, dict):
                v = ", ".join(f"{a}:{b['pi_rational']}" for a, b in v.items())
            elif isinstance(v, list) and len(v) > 6:
                v = f"{len(v)} items"
            parts.append(f"{k}={v}")
    return "; ".join(parts)


def to_table(report):
    rows = [(c.name, "PASS" if c.passed else "FAIL",
             "" if c.residual is None else f"{c.residual:.3g}",
             c.error or _brief(c.payload)) for c in sorted(report.checks, key=lambda c: c.name)]
    head = ("check", "status", "residual", "detail")
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(3)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths + [0])).rstrip()]
    for r in rows:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths + [0])).rstrip())
    d = report.to_dict()["summary"]
    lines.append(f"{d['passed']}/{d['total']} checks passed")
    return "\n".join(lines) + "\n"


FORMATTERS = {"json": to_json, "csv": to_csv, "table": to_table}


def load_schema():
    return json.loads(resources.files("braidlab").joinpath("report_schema.json").read_text())
