"""The seven-example comparison: run every method, hunt for the expected pathologies, diff."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..analysis import MethodRow, evaluate
from ..conclusion import ALL_METHODS, InterpolationConfig, MethodId
from ..fis import RuleBaseDocument, format_num, serialize_fis, serialize_observation, write_csv
from .examples import SKELETONS, BenchInstance, build_example
from .search import NotFound, SearchBudget, Target, find_witness
from .svg import render_svg

M = MethodId
ROBUST = frozenset({M.MACI, M.IMUL, M.CRF, M.GM, M.SCALE_MOVE})
# pathologies the comparison reports; LESFRI's are searched but may stay unreproduced
ABNORMAL_TARGETS = {
    3: (M.VKK,),
    6: (M.KH, M.KH_STAB, M.VKK, M.LESFRI),
    7: (M.KH, M.KH_STAB, M.VKK, M.LESFRI),
}
NONLINEAR_TARGETS = {6: (M.FRIPOC,)}
OPTIONAL_TARGETS = frozenset({(6, M.LESFRI), (7, M.LESFRI)})


def expected_abnormal(example_id: int, method: MethodId) -> Optional[bool]:
    """True / False where the comparison states an outcome, None where it is silent."""
    if method in ABNORMAL_TARGETS.get(example_id, ()):
        return True
    if method in ROBUST:
        return False
    return None


def expected_linear(example_id: int, method: MethodId) -> Optional[bool]:
    if method in NONLINEAR_TARGETS.get(example_id, ()):
        return False
    if method in ROBUST:
        return True
    return None


@dataclass
class SuiteCell:
    example_id: int
    method: MethodId
    status: str
    abnormal: Optional[bool]
    linear: Optional[bool]
    geometry: Optional[tuple[float, float, float, float]]
    expected_abnormal: Optional[bool]
    expected_linear: Optional[bool]
    witnesses: list[str] = field(default_factory=list)
    note: str = ""

    def csv_row(self) -> dict:
        g = self.geometry or (None, None, None, None)
        return {"example": self.example_id, "method": self.method.value, "status": self.status,
                "abnormal": self.abnormal, "linear": self.linear,
                "lf": g[0], "lc": g[1], "rc": g[2], "rf": g[3]}


@dataclass
class WitnessRecord:
    example_id: int
    target: Target
    instance: Optional[BenchInstance]
    not_found: Optional[NotFound] = None

    @property
    def found(self) -> bool:
        return self.instance is not None

    @property
    def slug(self) -> str:
        return f"ex{self.example_id}_{self.target.kind}_{self.target.method.value}"


@dataclass
class SuiteReport:
    cells: list[SuiteCell] = field(default_factory=list)
    witnesses: list[WitnessRecord] = field(default_factory=list)
    instances: dict[int, BenchInstance] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)
    not_reproduced: list[str] = field(default_factory=list)

    def cell(self, example_id: int, method) -> SuiteCell:
        m = MethodId.parse(method)
        return next(c for c in self.cells if c.example_id == example_id and c.method is m)

    def csv(self) -> str:
        return write_csv(c.csv_row() for c in self.cells)

    def summary(self) -> dict:
        return {
            "mismatches": list(self.mismatches),
            "not_reproduced": list(self.not_reproduced),
            "witnesses": [
                {"example": w.example_id, "target": str(w.target), "found": w.found,
                 "seed": (w.instance.seed if w.found else w.not_found.seed),
                 "iteration": w.instance.iteration if w.found else None,
                 "samples": None if w.found else w.not_found.samples}
                for w in self.witnesses],
        }


def _targets(methods: Iterable[MethodId]) -> list[tuple[int, Target]]:
    chosen = set(methods)
    out = []
    for ex in sorted(SKELETONS):
        out += [(ex, Target("abnormal", m)) for m in ABNORMAL_TARGETS.get(ex, ()) if m in chosen]
        out += [(ex, Target("nonlinear", m)) for m in NONLINEAR_TARGETS.get(ex, ()) if m in chosen]
    return out


def run_suite(cfg: InterpolationConfig | None = None, budget: SearchBudget | None = None,
              methods: Iterable | None = None, seed: int = 42) -> SuiteReport:
    cfg = cfg or InterpolationConfig()
    budget = budget or SearchBudget(seed=seed)
    order = {m: i for i, m in enumerate(ALL_METHODS)}
    chosen = ALL_METHODS if methods is None else sorted({MethodId.parse(m) for m in methods}, key=order.get)
    rep = SuiteReport()
    if not chosen:
        return rep
    for ex in sorted(SKELETONS):
        rep.instances[ex] = build_example(ex, seed)
    for ex, target in _targets(chosen):
        found = find_witness(ex, target, budget, cfg)
        if isinstance(found, NotFound):
            rep.witnesses.append(WitnessRecord(ex, target, None, found))
        else:
            rep.witnesses.append(WitnessRecord(ex, target, found))

    for ex in sorted(SKELETONS):
        inst = rep.instances[ex]
        extra = [w for w in rep.witnesses if w.example_id == ex and w.found]
        for m in chosen:
            row: MethodRow = evaluate(m, inst.rb, inst.obs, cfg)
            cell = SuiteCell(ex, m, row.status, row.abnormal, row.linear, row.geometry,
                             expected_abnormal(ex, m), expected_linear(ex, m))
            for w in extra:
                hit = w.target.method is m
                if hit or m in ROBUST:
                    wrow = evaluate(m, w.instance.rb, w.instance.obs, cfg)
                    cell.witnesses.append(w.slug)
                    if wrow.abnormal:
                        cell.abnormal = True
                    if wrow.linear is False:
                        cell.linear = False
            _diff(rep, cell)
            rep.cells.append(cell)
    return rep


def _diff(rep: SuiteReport, cell: SuiteCell) -> None:
    ex, m = cell.example_id, cell.method
    key = f"example {ex} {m.value}"
    if cell.expected_abnormal is not None and cell.abnormal is not cell.expected_abnormal:
        if cell.expected_abnormal and (ex, m) in OPTIONAL_TARGETS:
            cell.note = "NOT REPRODUCED"
            rep.not_reproduced.append(f"{key}: abnormality NOT REPRODUCED within the search budget")
        else:
            rep.mismatches.append(f"{key}: abnormal={cell.abnormal}, expected {cell.expected_abnormal}")
    if cell.expected_linear is not None and cell.linear is not cell.expected_linear:
        rep.mismatches.append(f"{key}: linear={cell.linear}, expected {cell.expected_linear}")


def write_artifacts(rep: SuiteReport, out_dir: str | Path, cfg: InterpolationConfig | None = None) -> list[Path]:
    """suite.csv, summary.json, witness files and one SVG per (example, method)."""
    from ..methods import interpolate
    from ..errors import FriError

    cfg = cfg or InterpolationConfig()
    out = Path(out_dir)
    (out / "figures").mkdir(parents=True, exist_ok=True)
    (out / "witnesses").mkdir(parents=True, exist_ok=True)
    written = []
    p = out / "suite.csv"
    p.write_text(rep.csv(), encoding="utf-8")
    written.append(p)
    p = out / "summary.json"
    p.write_text(json.dumps(rep.summary(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(p)
    for w in rep.witnesses:
        d = out / "witnesses" / w.slug
        d.mkdir(parents=True, exist_ok=True)
        if w.found:
            inst = w.instance
            doc = RuleBaseDocument.from_rule_base(inst.rb, name=w.slug, default_method=w.target.method.value)
            (d / "rulebase.fis").write_text(serialize_fis(doc), encoding="utf-8")
            (d / "observation.obs").write_text(serialize_observation(inst.obs), encoding="utf-8")
            prov = {"example": w.example_id, "target": str(w.target), "seed": inst.seed,
                    "iteration": inst.iteration, "provenance": inst.provenance}
            (d / "provenance.json").write_text(json.dumps(prov, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            written += [d / "rulebase.fis", d / "observation.obs", d / "provenance.json"]
        else:
            (d / "search.log").write_text(w.not_found.render_log(), encoding="utf-8")
            written.append(d / "search.log")
    methods = sorted({c.method for c in rep.cells}, key=list(ALL_METHODS).index)
    for ex, inst in sorted(rep.instances.items()):
        for m in methods:
            try:
                c = interpolate(m, inst.rb, inst.obs, cfg)
                concl = {m.value: c}
            except FriError:
                concl = {}
            p = out / "figures" / f"example{ex}_{m.value}.svg"
            render_svg(inst, concl, p, title=f"example {ex}, {m.value}")
            written.append(p)
    return written


def format_matrix(rep: SuiteReport) -> str:
    """Plain-text matrix: one line per example, one cell per method."""
    methods = sorted({c.method for c in rep.cells}, key=list(ALL_METHODS).index)
    lines = ["example " + " ".join(f"{m.value:>10}" for m in methods)]
    for ex in sorted({c.example_id for c in rep.cells}):
        cells = []
        for m in methods:
            c = rep.cell(ex, m)
            if c.status != "ok":
                txt = "error"
            else:
                txt = ("abn" if c.abnormal else "ok") + ("" if c.linear is not False else "/nl")
            cells.append(f"{txt:>10}")
        lines.append(f"{ex:>7} " + " ".join(cells))
    return "\n".join(lines)


__all__ = ["run_suite", "write_artifacts", "SuiteReport", "SuiteCell", "expected_abnormal",
           "expected_linear", "format_matrix", "format_num"]
