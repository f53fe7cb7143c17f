"""Serialization: graphs, spectra, histograms, reports, experiment configs.

One self-describing JSON-shaped format (``"format": 1``) covers all object
types; files are UTF-8 and written canonically (sorted keys, fixed
separators) so equal objects produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvariantError, ParseError
from .graphs import RegularGraph, RegularHypergraph, RsbmGraph
from .measures import EmpiricalMeasure, histogram
from .operators import sparse_triplets
from .spectral import LiftedPair, LiftedSpectrum

FORMAT_VERSION = 1


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_json(path) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}") from e
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object at top level")
    return obj


def _require(obj: dict, key: str, path):
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}")
    return obj[key]


def graph_document(g) -> dict:
    if isinstance(g, RsbmGraph):
        return {
            "format": FORMAT_VERSION,
            "model": "rsbm",
            "n": g.n,
            "d": g.d1 + g.d2,
            "d1": g.d1,
            "d2": g.d2,
            "sigma": list(g.sigma),
            "edges": [list(e) for e in g.graph.edges],
        }
    if isinstance(g, RegularHypergraph):
        return {
            "format": FORMAT_VERSION,
            "model": "hypergraph",
            "n": g.n,
            "d": g.d,
            "k": g.k,
            "hyperedges": [list(e) for e in g.hyperedges],
        }
    if isinstance(g, RegularGraph):
        return {
            "format": FORMAT_VERSION,
            "model": "regular",
            "n": g.n,
            "d": g.d,
            "edges": [list(e) for e in g.edges],
        }
    raise TypeError(f"cannot serialize {type(g).__name__}")


def write_graph(g, path) -> None:
    _write_text(path, _dumps(graph_document(g)))


def read_graph(path):
    """Load a graph/hypergraph/RSBM file; the full degree audit runs before
    the object is returned (InvariantError on failure)."""
    obj = _load_json(path)
    model = _require(obj, "model", path)
    try:
        if model == "regular":
            g = RegularGraph(
                n=int(_require(obj, "n", path)),
                d=int(_require(obj, "d", path)),
                edges=tuple(tuple(int(x) for x in e) for e in _require(obj, "edges", path)),
            )
        elif model == "hypergraph":
            g = RegularHypergraph(
                n=int(_require(obj, "n", path)),
                d=int(_require(obj, "d", path)),
                k=int(_require(obj, "k", path)),
                hyperedges=tuple(
                    tuple(int(x) for x in e) for e in _require(obj, "hyperedges", path)
                ),
            )
        elif model == "rsbm":
            n = int(_require(obj, "n", path))
            d1 = int(_require(obj, "d1", path))
            d2 = int(_require(obj, "d2", path))
            g = RsbmGraph(
                n=n,
                d1=d1,
                d2=d2,
                sigma=tuple(int(s) for s in _require(obj, "sigma", path)),
                graph=RegularGraph(
                    n=n,
                    d=d1 + d2,
                    edges=tuple(tuple(int(x) for x in e) for e in _require(obj, "edges", path)),
                ),
            )
        else:
            raise ParseError(f"{path}: unknown model {model!r}")
    except (TypeError, ValueError) as e:
        if isinstance(e, (ParseError, InvariantError)):
            raise
        raise ParseError(f"{path}: malformed field ({e})") from e
    g.validate()
    return g


def write_spectrum(spec: LiftedSpectrum, path) -> None:
    doc = {
        "format": FORMAT_VERSION,
        "model": spec.kind,
        "params": {
            "n": spec.n,
            "d": spec.d,
            "k": spec.k,
            "d1": spec.d1,
            "d2": spec.d2,
        },
        "pairs": [
            {
                "lambda": p.lam,
                "mu_re": p.mu.real,
                "mu_im": p.mu.imag,
                "mu_prime_re": p.mu_prime.real,
                "mu_prime_im": p.mu_prime.imag,
                "residual_u": p.residual_u,
                "residual_u_prime": p.residual_u_prime,
                "ratio_v": p.ratio_v,
                "ratio_u": p.ratio_u,
                "ratio_u_prime": p.ratio_u_prime,
                "degenerate": p.degenerate,
            }
            for p in spec.pairs
        ],
    }
    _write_text(path, _dumps(doc))


def read_spectrum(path) -> LiftedSpectrum:
    """Load a spectrum file; pairs carry values and diagnostics but no
    eigenvectors (u/w lifts need the original graph)."""
    obj = _load_json(path)
    params = _require(obj, "params", path)
    kind = _require(obj, "model", path)
    d = int(_require(params, "d", path))
    k = params.get("k")
    pairs = []
    for rec in _require(obj, "pairs", path):
        try:
            pairs.append(
                LiftedPair(
                    lam=float(rec["lambda"]),
                    mu=complex(rec["mu_re"], rec["mu_im"]),
                    mu_prime=complex(rec["mu_prime_re"], rec["mu_prime_im"]),
                    degenerate=bool(rec["degenerate"]),
                    d=d,
                    k=None if k is None else int(k),
                    residual_u=rec.get("residual_u"),
                    residual_u_prime=rec.get("residual_u_prime"),
                    ratio_v=rec.get("ratio_v"),
                    ratio_u=rec.get("ratio_u"),
                    ratio_u_prime=rec.get("ratio_u_prime"),
                )
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"{path}: malformed pair record ({e})") from e
    return LiftedSpectrum(
        kind=kind,
        n=int(_require(params, "n", path)),
        d=d,
        k=None if k is None else int(k),
        pairs=tuple(pairs),
        d1=params.get("d1"),
        d2=params.get("d2"),
    )


def write_histogram(m: EmpiricalMeasure, path, bins=None) -> None:
    """CSV with header bin_left,bin_right,count,density."""
    edges, counts, dens = histogram(m, bins=bins)
    lines = ["bin_left,bin_right,count,density"]
    for i in range(len(counts)):
        lines.append(f"{edges[i]!r},{edges[i + 1]!r},{int(counts[i])},{dens[i]!r}")
    _write_text(path, "\n".join(lines) + "\n")


def write_report(report: dict, path) -> None:
    _write_text(path, _dumps(report))


def write_matrix_triplets(M, path, header: dict) -> None:
    """Sparse dump: one JSON header line, then 'row col value' lines sorted
    row-major."""
    lines = [_dumps({"format": FORMAT_VERSION, **header}).rstrip("\n")]
    for r, c, v in sparse_triplets(M):
        lines.append(f"{r} {c} {v!r}")
    _write_text(path, "\n".join(lines) + "\n")


@dataclass(frozen=True)
class ExperimentConfig:
    """Reproducible experiment description: model, trials, seed, outputs."""

    model: str
    params: dict
    trials: int = 1
    master_seed: int = 0
    out_dir: str = "."
    tolerances: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.trials < 1:
            raise InvariantError("trial count must be >= 1")
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise InvariantError(f"tolerance {name} must be positive, got {tol}")

    def to_json(self) -> str:
        return _dumps(
            {
                "format": FORMAT_VERSION,
                "model": self.model,
                "params": self.params,
                "trials": self.trials,
                "master_seed": self.master_seed,
                "out_dir": self.out_dir,
                "tolerances": self.tolerances,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"config: invalid JSON ({e})") from e
        cfg = cls(
            model=obj.get("model", ""),
            params=obj.get("params", {}),
            trials=int(obj.get("trials", 1)),
            master_seed=int(obj.get("master_seed", 0)),
            out_dir=obj.get("out_dir", "."),
            tolerances=obj.get("tolerances", {}),
        )
        cfg.validate()
        return cfg


def write_config(cfg: ExperimentConfig, path) -> None:
    cfg.validate()
    _write_text(path, cfg.to_json())


def read_config(path) -> ExperimentConfig:
    return ExperimentConfig.from_json(Path(path).read_text(encoding="utf-8"))
