"""Batch entry points: fit, evaluate, generate, split, serve.

Machine output goes to stdout as JSON; diagnostics go to stderr. Exit code
is 0 exactly when the command succeeded.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click

from .boost import fit_auto, predict_batch
from .core import Model
from .data import SplitSpec, generate_planted, load_csv, load_planted_spec, save_csv, split
from .errors import OrdboostError
from .metrics import report


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Permutation regression over order-constraint features."""


@main.command("fit")
@click.option("--train", "train_path", required=True, type=click.Path(exists=True))
@click.option("--val", "val_path", required=True, type=click.Path(exists=True))
@click.option("--l", "l", required=True, type=int, help="number of boosting steps")
@click.option("--learning-rate", "lr", default=1.0, show_default=True, type=float)
@click.option("--max-len", default=None, type=int, help="constraint length cap (default: all items)")
@click.option("--out", "out_path", required=True, type=click.Path())
def cmd_fit(train_path: str, val_path: str, l: int, lr: float, max_len: int | None, out_path: str) -> None:
    """Fit a model automatically and write it as JSON."""
    try:
        train = load_csv(train_path)
        val = load_csv(val_path)
        model = fit_auto(train, l, lr, max_len)
        Path(out_path).write_text(
            json.dumps(model.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
        out = {
            "model": out_path,
            "terms": len(model.terms),
            "train": report(train.targets(), predict_batch(model, train)).to_dict(),
            "validation": report(val.targets(), predict_batch(model, val)).to_dict(),
        }
        click.echo(json.dumps(out, indent=2))
    except (OrdboostError, OSError) as exc:
        _fail(exc)


@main.command("eval")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
def cmd_eval(model_path: str, data_path: str) -> None:
    """Score a saved model on a dataset; prints MAE/MSE/R^2 as JSON."""
    try:
        model = Model.from_dict(json.loads(Path(model_path).read_text(encoding="utf-8")))
        ds = load_csv(data_path)
        click.echo(json.dumps(report(ds.targets(), predict_batch(model, ds)).to_dict(), indent=2))
    except (OrdboostError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)


@main.command("gen")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--seed", default=None, type=int, help="override the seed from the spec file")
def cmd_gen(spec_path: str, out_path: str, seed: int | None) -> None:
    """Generate a synthetic dataset from a planted-model spec (JSON)."""
    try:
        spec = load_planted_spec(spec_path)
        if seed is not None:
            spec = dataclasses.replace(spec, seed=seed)
        ds = generate_planted(spec)
        save_csv(ds, out_path)
        click.echo(json.dumps({"out": out_path, "n_items": ds.n_items, "rows": len(ds)}))
    except (OrdboostError, OSError) as exc:
        _fail(exc)


@main.command("split")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--train", "n_train", required=True, type=int)
@click.option("--validation", "n_val", required=True, type=int)
@click.option("--test", "n_test", required=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out-prefix", required=True)
def cmd_split(data_path: str, n_train: int, n_val: int, n_test: int, seed: int, out_prefix: str) -> None:
    """Deterministically split a dataset into three files."""
    try:
        ds = load_csv(data_path)
        parts = split(ds, SplitSpec(n_train, n_val, n_test, seed))
        paths = [f"{out_prefix}.{name}.csv" for name in ("train", "validation", "test")]
        for part, path in zip(parts, paths):
            save_csv(part, path)
        click.echo(json.dumps({"files": paths, "sizes": [len(p) for p in parts]}))
    except (OrdboostError, OSError) as exc:
        _fail(exc)


@main.command("serve")
@click.option("--bind", default="127.0.0.1:8000", show_default=True, help="host:port")
@click.option("--ui", "ui_dir", default=None, type=click.Path(exists=True),
              help="directory with the built browser client, served at /")
def cmd_serve(bind: str, ui_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .server import create_app

    host, _, port = bind.rpartition(":")
    try:
        uvicorn.run(create_app(static_dir=ui_dir), host=host or "127.0.0.1", port=int(port))
    except (OSError, ValueError) as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
