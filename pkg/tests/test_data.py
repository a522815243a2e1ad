from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import random_dataset
from ordboost import (
    Constraint,
    Dataset,
    PlantedSpec,
    SplitSpec,
    fulfills,
    generate_planted,
    load_csv,
    save_csv,
    split,
    validate_permutation,
)
from ordboost.data import load_planted_spec, parse_csv_text
from ordboost.errors import (
    DuplicateItem,
    InsufficientRows,
    InvalidSpec,
    Malformed,
    NonFiniteTarget,
)


def test_csv_round_trip(tmp_path):
    for seed in range(5):
        ds = random_dataset(n=4 + seed % 3, m=17, seed=seed)
        path = tmp_path / f"ds{seed}.csv"
        save_csv(ds, path)
        assert load_csv(path) == ds


def test_csv_format_is_exact(tmp_path):
    ds = Dataset(4, [(validate_permutation([3, 2, 1, 4], 4), 0.75)])
    path = tmp_path / "one.csv"
    save_csv(ds, path)
    assert path.read_bytes() == b"pos_1,pos_2,pos_3,pos_4,target\n3,2,1,4,0.75\n"


def test_csv_parse_errors():
    header = "pos_1,pos_2,pos_3,target\n"
    with pytest.raises(DuplicateItem, match=":2:"):
        parse_csv_text(header + "1,1,3,0.5\n")
    with pytest.raises(Malformed, match=":2:"):
        parse_csv_text(header + "1,2,0.5\n")
    with pytest.raises(Malformed, match=":2:"):
        parse_csv_text(header + "1,2,x,0.5\n")
    with pytest.raises(NonFiniteTarget, match=":3:"):
        parse_csv_text(header + "1,2,3,0.5\n1,2,3,nan\n")
    with pytest.raises(Malformed, match="header"):
        parse_csv_text("a,b,c\n1,2,0.5\n")
    with pytest.raises(Malformed):
        parse_csv_text(header)


def test_split_shapes_and_determinism():
    ds = random_dataset(5, 750, seed=77)
    spec = SplitSpec(train=450, validation=50, test=250, seed=123)
    train, val, test = split(ds, spec)
    assert (len(train), len(val), len(test)) == (450, 50, 250)
    train2, val2, test2 = split(ds, spec)
    assert train == train2 and val == val2 and test == test2


def test_split_is_a_partition_when_sizes_cover():
    ds = random_dataset(4, 30, seed=5)
    train, val, test = split(ds, SplitSpec(20, 5, 5, seed=9))
    combined = sorted(
        (p.items, y) for part in (train, val, test) for p, y in part.rows
    )
    assert combined == sorted((p.items, y) for p, y in ds.rows)


def test_split_insufficient_rows():
    ds = random_dataset(3, 10, seed=0)
    with pytest.raises(InsufficientRows):
        split(ds, SplitSpec(8, 2, 2, seed=0))
    with pytest.raises(InvalidSpec):
        SplitSpec(0, 2, 2, seed=0)


def test_generate_planted_noiseless_targets():
    spec = PlantedSpec(
        n_items=4, m_rows=100, mu0=0.5,
        planted=((Constraint((1, 2)), 0.3),), noise_sd=0.0, seed=3,
    )
    ds = generate_planted(spec)
    for perm, y in ds.rows:
        expected = 0.5 + (0.3 if fulfills(perm, Constraint((1, 2))) else 0.0)
        assert y == expected


def test_generate_planted_deterministic():
    spec = PlantedSpec(
        n_items=5, m_rows=50, mu0=0.0,
        planted=((Constraint((2, 5)), 1.0),), noise_sd=0.1, seed=42,
    )
    assert generate_planted(spec) == generate_planted(spec)


def test_generate_planted_empty_planted_list():
    spec = PlantedSpec(n_items=3, m_rows=10, mu0=1.5, planted=(), noise_sd=0.0, seed=1)
    assert all(y == 1.5 for _, y in generate_planted(spec).rows)


def test_planted_pair_fulfillment_rate_is_binomial():
    spec = PlantedSpec(
        n_items=6, m_rows=1000, mu0=0.0,
        planted=((Constraint((2, 4)), 1.0),), noise_sd=0.0, seed=8,
    )
    ds = generate_planted(spec)
    frac = np.mean([fulfills(p, Constraint((2, 4))) for p, _ in ds.rows])
    # every total order satisfies exactly one of (2,4)/(4,2): p = 1/2
    assert abs(frac - 0.5) <= 3 * np.sqrt(0.25 / 1000)


def test_planted_spec_validation():
    with pytest.raises(InvalidSpec):
        PlantedSpec(n_items=3, m_rows=0, mu0=0.0, planted=(), noise_sd=0.0, seed=0)
    with pytest.raises(InvalidSpec):
        PlantedSpec(n_items=3, m_rows=5, mu0=0.0, planted=(), noise_sd=-1.0, seed=0)
    with pytest.raises(InvalidSpec):
        PlantedSpec(
            n_items=3, m_rows=5, mu0=0.0,
            planted=((Constraint((1, 2)), 0.1), (Constraint((1, 2)), 0.2)),
            noise_sd=0.0, seed=0,
        )


def test_planted_spec_json_round_trip(tmp_path):
    spec = PlantedSpec(
        n_items=5, m_rows=20, mu0=0.25,
        planted=((Constraint((1, 2)), 0.3), (Constraint((4, 3)), -0.2)),
        noise_sd=0.05, seed=7,
    )
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert load_planted_spec(path) == spec
