"""Verdicts, run configuration, and CSV/JSON report emission."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

CSV_COLUMNS = ["group", "order", "suite", "params", "hypothesis", "conclusion", "status",
               "k_p", "sylow_order", "d_value", "witness"]

CONFIRMED = "confirmed"
VACUOUS = "vacuous"
REFUTED = "refuted"
SKIPPED = "skipped"
ERROR = "error"  # internal cross-check failure; fails the run like a refutation

THEOREM_SUITES = ("A", "B", "C", "D", "E", "F")
LEMMA_SUITES = (
    "burnside", "complement-count", "isolation", "zstar", "power-closure",
    "degree-bounds", "half-classification", "pprime-quotient", "two-class-bound",
    "sylow-abelian", "simple-bound",
)
ALL_SUITES = THEOREM_SUITES + LEMMA_SUITES

DEFAULT_PI_SETS = ((2, 3), (2, 5), (3, 5), (3, 5, 7))


@dataclass
class Verdict:
    group: str
    order: int
    suite: str
    params: str
    hypothesis: bool | None
    conclusion: bool | None
    status: str
    k_p: int | None = None
    sylow_order: int | None = None
    d_value: Fraction | None = None
    witness: dict | None = None

    @classmethod
    def directed(cls, group: str, order: int, suite: str, params: str, hypothesis: bool,
                 conclusion: bool | None, **extra) -> "Verdict":
        """Status from a directed check: vacuous unless the hypothesis holds."""
        if not hypothesis:
            status = VACUOUS
        else:
            status = CONFIRMED if conclusion else REFUTED
        return cls(group, order, suite, params, hypothesis, conclusion, status, **extra)

    @property
    def failed(self) -> bool:
        return self.status in (REFUTED, ERROR)

    def sort_key(self) -> tuple[str, str, str]:
        return (self.group, self.suite, self.params)

    def to_json(self) -> dict:
        d = self.d_value
        return {
            "group": self.group,
            "order": self.order,
            "suite": self.suite,
            "params": self.params,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "status": self.status,
            "k_p": self.k_p,
            "sylow_order": self.sylow_order,
            "d_value": None if d is None else f"{d.numerator}/{d.denominator}",
            "d_value_display_only": None if d is None else f"{float(d):.6f}",
            "witness": self.witness,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        d = data.get("d_value")
        return cls(
            group=data["group"], order=data["order"], suite=data["suite"], params=data["params"],
            hypothesis=data["hypothesis"], conclusion=data["conclusion"], status=data["status"],
            k_p=data.get("k_p"), sylow_order=data.get("sylow_order"),
            d_value=None if d is None else Fraction(d), witness=data.get("witness"),
        )


@dataclass
class SuiteConfig:
    suites: list[str] = field(default_factory=lambda: list(ALL_SUITES))
    catalogs: list[str] = field(default_factory=list)
    builtin: bool = False
    max_order: int | None = None
    primes: list[int] | None = None
    pi_sets: list[tuple[int, ...]] | None = None
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1
    seed: int = 0
    timeout: float = 30.0

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in ALL_SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        if self.primes is not None and any(p < 2 for p in self.primes):
            raise ValueError("primes must be >= 2")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


def expand_suites(names: list[str]) -> list[str]:
    out: list[str] = []
    for name in names:
        if name == "all":
            picked = ALL_SUITES
        elif name == "lemmas":
            picked = LEMMA_SUITES
        elif name in ALL_SUITES:
            picked = (name,)
        else:
            raise ValueError(f"unknown suite {name!r}")
        out += [s for s in picked if s not in out]
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def render_csv(verdicts: list[Verdict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for v in verdicts:
        writer.writerow([_cell(getattr(v, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def render_json(verdicts: list[Verdict]) -> str:
    return json.dumps({"verdicts": [v.to_json() for v in verdicts]}, indent=1, sort_keys=True) + "\n"


def parse_json_report(text: str) -> list[Verdict]:
    return [Verdict.from_json(d) for d in json.loads(text)["verdicts"]]


def emit_report(verdicts: list[Verdict], fmt: str, path: str | None = None) -> str:
    """Render and write the report (to ``path``, or return it only when None)."""
    if fmt == "csv":
        text = render_csv(verdicts)
    elif fmt == "json":
        text = render_json(verdicts)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
