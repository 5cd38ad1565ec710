"""The fixed Construction 1 / Construction 3 / best representation comparison."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from .constructions import BestRep, Construct1, Construct3
from .interval import Interval
from .scalar import MAX, O_M, O_P, ScalarFn, fmt_num

X1, Y1 = Interval(0.2, 0.8), Interval(0.5, 1.0)
X2, Y2 = Interval(0.6, 0.9), Interval(0.8, 0.8)

FOOTNOTES = {
    "a": ("Formula value. The figure [0.107, 0.707] that circulates for this cell "
          "drops the -alpha*m shift of the lower endpoint (center 0.107, width 0.6)."),
    "b": ("Formula value. K_0.5([0.6, 0.9]) = 0.75 and O_P(0.75, 0.8) = 0.6; the figure "
          "[0.56, 0.56] that circulates for this cell corresponds to a center of 0.7."),
}


@dataclass(frozen=True)
class Row:
    X: Interval
    Y: Interval
    B: ScalarFn
    alpha_c1: float
    alpha_c3: float
    marks: tuple = ()  # (column, footnote key)

    def cells(self, O: ScalarFn = O_P) -> tuple[Interval, Interval, Interval]:
        return (Construct1(O, self.B, self.alpha_c1)(self.X, self.Y),
                Construct3(O, self.B, self.alpha_c3)(self.X, self.Y),
                BestRep(O)(self.X, self.Y))

    @property
    def alpha_label(self) -> str:
        if self.alpha_c1 == self.alpha_c3:
            return fmt_num(self.alpha_c1)
        return f"{fmt_num(self.alpha_c1)} / {fmt_num(self.alpha_c3)}"


ROWS = (
    Row(X1, Y1, MAX, 0.01, 0.01, (("c1", "a"),)),
    Row(X1, Y1, MAX, 0.5, 0.5),
    Row(X1, Y1, MAX, 1.0, 0.99),
    Row(X2, Y2, MAX, 0.01, 0.01),
    Row(X2, Y2, MAX, 0.5, 0.5),
    Row(X2, Y2, MAX, 1.0, 0.99),
    Row(X2, Y2, O_M, 0.01, 0.01),
    Row(X2, Y2, O_M, 0.5, 0.5, (("c3", "b"),)),
    Row(X2, Y2, O_M, 1.0, 0.99),
)

HEADER = ("row", "X", "Y", "B", "alpha (C1 / C3)", "Construction 1", "Construction 3", "best representation")


def _records():
    for k, r in enumerate(ROWS, 1):
        c1, c3, rep = r.cells()
        marks = dict(r.marks)
        yield k, r, {"c1": c1, "c3": c3, "rep": rep}, marks


def _cell(iv: Interval, digits, mark=None) -> str:
    s = iv.format(digits)
    return f"{s} [{mark}]" if mark else s


def render(fmt: str = "markdown", digits: Optional[int] = 6) -> str:
    if fmt == "json":
        rows = []
        for k, r, cells, marks in _records():
            rows.append({
                "row": k, "X": r.X.format(digits), "Y": r.Y.format(digits), "B": r.B.text,
                "alpha_c1": r.alpha_c1, "alpha_c3": r.alpha_c3,
                **{c: list(iv.as_tuple()) if digits is None else [round(v, digits) for v in iv.as_tuple()]
                   for c, iv in cells.items()},
                "footnotes": {c: FOOTNOTES[m] for c, m in marks.items()},
            })
        return json.dumps({"rows": rows}, indent=2) + "\n"

    body = []
    for k, r, cells, marks in _records():
        body.append([str(k), r.X.format(digits), r.Y.format(digits), r.B.text, r.alpha_label]
                    + [_cell(cells[c], digits, marks.get(c)) for c in ("c1", "c3", "rep")])
    notes = [f"[{m}] {t}" for m, t in FOOTNOTES.items()]

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        w.writerows(body)
        for n in notes:
            buf.write(f"# {n}\n")
        return buf.getvalue()
    if fmt == "plain":
        widths = [max(len(x) for x in col) for col in zip(HEADER, *body)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in [HEADER, *body]]
        return "\n".join(lines + [""] + notes) + "\n"
    lines = ["| " + " | ".join(HEADER) + " |", "|" + "---|" * len(HEADER)]
    lines += ["| " + " | ".join(b) + " |" for b in body]
    return "\n".join(lines + [""] + notes) + "\n"
