"""Dataset files, deterministic splits, and the planted-model generator.

CSV format (bit-exact): header ``pos_1,...,pos_n,target``; each data row is
n comma-separated 1-based item ids followed by a decimal target. UTF-8, LF
line endings, no quoting. Rows that fail validation abort the load - silent
data corruption is worse than a hard error.

All randomness comes from numpy's PCG64 generator seeded explicitly, so
splits and generated datasets are reproducible across runs and platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Constraint, Dataset, Permutation, validate_permutation
from .errors import (
    InsufficientRows,
    InvalidSpec,
    Malformed,
    NonFiniteTarget,
    OrdboostError,
)
from .featurize import fulfills


@dataclass(frozen=True)
class SplitSpec:
    train: int
    validation: int
    test: int
    seed: int

    def __post_init__(self) -> None:
        if min(self.train, self.validation, self.test) <= 0:
            raise InvalidSpec("all split sizes must be positive")
        if self.seed < 0:
            raise InvalidSpec("seed must be non-negative")


@dataclass(frozen=True)
class PlantedSpec:
    """Synthetic ground truth: target = mu0 + sum of coefficients of the
    fulfilled planted constraints, plus Gaussian noise."""

    n_items: int
    m_rows: int
    mu0: float
    planted: tuple[tuple[Constraint, float], ...]
    noise_sd: float
    seed: int

    def __post_init__(self) -> None:
        if self.n_items < 1:
            raise InvalidSpec("n_items must be positive")
        if self.m_rows < 1:
            raise InvalidSpec("m_rows must be positive")
        if self.noise_sd < 0 or not math.isfinite(self.noise_sd):
            raise InvalidSpec("noise_sd must be finite and non-negative")
        if self.seed < 0:
            raise InvalidSpec("seed must be non-negative")
        seen = set()
        for c, coeff in self.planted:
            c.validate_for(self.n_items)
            if not math.isfinite(coeff):
                raise InvalidSpec(f"non-finite coefficient for {c.items}")
            if c.items in seen:
                raise InvalidSpec(f"planted constraint {c.items} repeated")
            seen.add(c.items)

    @staticmethod
    def from_dict(doc: dict) -> "PlantedSpec":
        try:
            planted = tuple(
                (Constraint(tuple(t["items"])), float(t["coefficient"]))
                for t in doc.get("planted", [])
            )
            return PlantedSpec(
                n_items=int(doc["n_items"]),
                m_rows=int(doc["m_rows"]),
                mu0=float(doc["mu0"]),
                planted=planted,
                noise_sd=float(doc.get("noise_sd", 0.0)),
                seed=int(doc.get("seed", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"bad planted spec: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "n_items": self.n_items,
            "m_rows": self.m_rows,
            "mu0": self.mu0,
            "planted": [
                {"items": list(c.items), "coefficient": coeff}
                for c, coeff in self.planted
            ],
            "noise_sd": self.noise_sd,
            "seed": self.seed,
        }


def _header(n: int) -> str:
    return ",".join(f"pos_{i}" for i in range(1, n + 1)) + ",target"


def load_csv(path: str | Path) -> Dataset:
    """Parse and validate a dataset file; any bad row aborts with its line number."""
    return parse_csv_text(Path(path).read_text(encoding="utf-8"), origin=str(path))


def parse_csv_text(text: str, origin: str = "<inline>") -> Dataset:
    path = origin
    lines = text.splitlines()
    if not lines:
        raise Malformed(f"{path}: empty file")
    header = lines[0].split(",")
    if len(header) < 2 or header[-1] != "target" or header[:-1] != [
        f"pos_{i}" for i in range(1, len(header))
    ]:
        raise Malformed(f"{path}:1: bad header {lines[0]!r}")
    n = len(header) - 1
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != n + 1:
            raise Malformed(f"{path}:{lineno}: expected {n + 1} fields, got {len(fields)}")
        try:
            items = [int(f) for f in fields[:-1]]
            target = float(fields[-1])
        except ValueError as exc:
            raise Malformed(f"{path}:{lineno}: {exc}") from exc
        if not math.isfinite(target):
            raise NonFiniteTarget(f"{path}:{lineno}: target {fields[-1]!r}")
        try:
            perm = validate_permutation(items, n)
        except OrdboostError as exc:
            exc.args = (f"{path}:{lineno}: {exc}",)
            raise
        rows.append((perm, target))
    if not rows:
        raise Malformed(f"{path}: no data rows")
    return Dataset(n, rows)


def save_csv(dataset: Dataset, path: str | Path) -> None:
    out = [_header(dataset.n_items)]
    for perm, target in dataset.rows:
        out.append(",".join(str(x) for x in perm.items) + f",{target!r}")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8", newline="\n")


def split(dataset: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset, Dataset]:
    """Seeded shuffle, then contiguous train/validation/test slices; rows
    beyond the requested sizes are dropped."""
    need = spec.train + spec.validation + spec.test
    if need > len(dataset):
        raise InsufficientRows(f"split needs {need} rows, dataset has {len(dataset)}")
    order = np.random.default_rng(spec.seed).permutation(len(dataset))
    picked = [dataset.rows[i] for i in order]
    a, b = spec.train, spec.train + spec.validation
    return (
        Dataset(dataset.n_items, picked[:a]),
        Dataset(dataset.n_items, picked[a:b]),
        Dataset(dataset.n_items, picked[b : b + spec.test]),
    )


def generate_planted(spec: PlantedSpec) -> Dataset:
    """Uniform random permutations with targets from the planted model; the
    permutation stream and the noise stream use independent child seeds."""
    seed_perm, seed_noise = np.random.SeedSequence(spec.seed).spawn(2)
    rng_perm = np.random.default_rng(seed_perm)
    rng_noise = np.random.default_rng(seed_noise)
    perms = [
        Permutation(tuple(int(x) + 1 for x in rng_perm.permutation(spec.n_items)))
        for _ in range(spec.m_rows)
    ]
    noise = rng_noise.normal(0.0, spec.noise_sd, size=spec.m_rows)
    rows = []
    for i, perm in enumerate(perms):
        y = spec.mu0
        for c, coeff in spec.planted:
            if fulfills(perm, c):
                y += coeff
        rows.append((perm, y + noise[i]))
    return Dataset(spec.n_items, rows)


def load_planted_spec(path: str | Path) -> PlantedSpec:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"{path}: {exc}") from exc
    return PlantedSpec.from_dict(doc)
