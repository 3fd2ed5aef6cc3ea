"""Rainbow tables and their CSV / JSON forms."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

CSV_HEADER = ("process", "lambda_um", "phi_deg", "theta_int_deg", "theta_ext_deg",
              "cross_section", "flag")
FLAGS = ("matched", "dark", "trapped", "invalid")


@dataclass(frozen=True)
class RainbowRow:
    """One scan point.  Angles in degrees; ``None`` when no direction exists."""

    process: str
    lambda_um: float
    phi_deg: float
    theta_int_deg: float | None
    theta_ext_deg: float | None
    cross_section: float
    flag: str

    def sort_key(self):
        def num(x):
            return -math.inf if x is None else x
        return (self.process, self.lambda_um, self.phi_deg, num(self.theta_int_deg),
                num(self.theta_ext_deg), self.cross_section, self.flag)


@dataclass(frozen=True)
class WavelengthSummary:
    process: str
    lambda_um: float
    coverage: float
    theta_ext_min: float | None
    theta_ext_max: float | None
    peak_phi_deg: float | None


@dataclass(frozen=True)
class RainbowTable:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows, key=RainbowRow.sort_key)))

    def __len__(self):
        return len(self.rows)

    def select(self, process=None, lambda_um=None, flag=None):
        return [r for r in self.rows
                if (process is None or r.process == process)
                and (lambda_um is None or r.lambda_um == lambda_um)
                and (flag is None or r.flag == flag)]

    def summary(self):
        """Per (process, wavelength): azimuth coverage, exit-angle range, peak azimuth."""
        groups = {}
        for r in self.rows:
            groups.setdefault((r.process, r.lambda_um), []).append(r)
        out = []
        for (process, lam), rows in groups.items():
            phis = {r.phi_deg for r in rows}
            matched = [r for r in rows if r.flag == "matched"]
            lit = {r.phi_deg for r in matched}
            ext = [r.theta_ext_deg for r in matched]
            peak = max(matched, key=lambda r: r.cross_section).phi_deg if matched else None
            out.append(WavelengthSummary(process, lam, len(lit) / len(phis),
                                         min(ext) if ext else None,
                                         max(ext) if ext else None, peak))
        return out


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return repr(float(x))


def _opt(s):
    return None if s == "" else float(s)


def to_csv(table: RainbowTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in table.rows:
        w.writerow([_fmt(getattr(r, name)) for name in
                    ("process", "lambda_um", "phi_deg", "theta_int_deg", "theta_ext_deg",
                     "cross_section", "flag")])
    return buf.getvalue()


def from_csv(text: str) -> RainbowTable:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        process, lam, phi, ti, te, xs, flag = rec
        rows.append(RainbowRow(process, float(lam), float(phi), _opt(ti), _opt(te), float(xs), flag))
    return RainbowTable(tuple(rows))


def to_json(table: RainbowTable) -> str:
    return json.dumps({"columns": list(CSV_HEADER),
                       "rows": [asdict(r) for r in table.rows]}, indent=1) + "\n"


def from_json(text: str) -> RainbowTable:
    data = json.loads(text)
    return RainbowTable(tuple(RainbowRow(**r) for r in data["rows"]))
