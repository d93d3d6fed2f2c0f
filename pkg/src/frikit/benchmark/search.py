"""Randomised search for instances on which a method misbehaves."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from ..analysis import check_linearity, detect_abnormality, run_dense
from ..conclusion import InterpolationConfig, MethodId
from ..errors import FriError
from .examples import BenchInstance, instance_at


@dataclass(frozen=True)
class Target:
    kind: str  # "abnormal" or "nonlinear"
    method: MethodId

    @classmethod
    def parse(cls, text: str) -> "Target":
        m = re.fullmatch(r"\s*(abnormal|nonlinear)\s*\(\s*([A-Za-z_&-]+)\s*\)\s*", text)
        if not m:
            raise ValueError(f"target must look like abnormal(KH) or nonlinear(FRIPOC), got {text!r}")
        return cls(m.group(1), MethodId.parse(m.group(2)))

    def __str__(self) -> str:
        return f"{self.kind}({self.method.value})"


@dataclass(frozen=True)
class SearchBudget:
    max_samples: int = 100_000
    seed: int = 0


@dataclass
class NotFound:
    example_id: int
    target: Target
    samples: int
    seed: int
    log: list[str] = field(default_factory=list)

    def render_log(self) -> str:
        head = (f"# search for {self.target} in example {self.example_id}: not found "
                f"after {self.samples} samples (seed {self.seed})\n")
        return head + "".join(line + "\n" for line in self.log)


def fires(target: Target, inst: BenchInstance, cfg: InterpolationConfig | None = None) -> bool:
    """True when the target pathology shows on the instance; method errors count as no."""
    cfg = cfg or InterpolationConfig()
    try:
        if target.kind == "abnormal":
            return detect_abnormality(run_dense(target.method, inst.rb, inst.obs, cfg), cfg).abnormal
        return not check_linearity(target.method, inst.rb, inst.obs, cfg).piecewise_linear
    except FriError:
        return False


def search_witness(example_id: int, target: Target | str, budget: SearchBudget | None = None,
                   cfg: InterpolationConfig | None = None) -> BenchInstance | NotFound:
    """Scan the seeded sample stream of a skeleton for the first instance hitting ``target``."""
    t = Target.parse(target) if isinstance(target, str) else target
    budget = budget or SearchBudget()
    log = []
    for i in range(budget.max_samples):
        inst = instance_at(example_id, budget.seed, i)
        if inst is None:
            log.append(f"{i} unflanked")
            continue
        if fires(t, inst, cfg):
            return inst
        log.append(f"{i} miss")
    return NotFound(example_id, t, budget.max_samples, budget.seed, log)


def witness_key(example_id: int, target: Target, seed: int) -> str:
    return f"ex{example_id}:{target}:seed{seed}"


def committed_witnesses() -> dict:
    text = resources.files("frikit").joinpath("data/witnesses.json").read_text(encoding="utf-8")
    return json.loads(text)


def find_witness(example_id: int, target: Target, budget: SearchBudget,
                 cfg: InterpolationConfig | None = None) -> BenchInstance | NotFound:
    """Replay the committed witness when it still fires, otherwise search."""
    entry: Optional[dict] = committed_witnesses().get(witness_key(example_id, target, budget.seed))
    if entry is not None and entry.get("iteration") is not None and entry["iteration"] < budget.max_samples:
        inst = instance_at(example_id, budget.seed, entry["iteration"])
        if inst is not None and fires(target, inst, cfg):
            # earlier samples were misses when the entry was recorded
            return inst
    return search_witness(example_id, target, budget, cfg)
