"""Regenerate the test corpus and the golden CLI outputs.

Run from the repository root:

    python3 scripts/make_goldens.py

Corpus map files land in tests/data/, one golden file per (corpus,
command) pair in tests/data/golden/. Everything is seeded, so reruns
reproduce the files byte for byte.
"""
from __future__ import annotations

import contextlib
import io
import pathlib
import sys

import numpy as np

from choifactor import (
    PairSumMap,
    check_positive,
    choi,
    conjugation_map,
    formats,
    identity_map,
    make_factor,
    map_scale,
    map_sum,
    trace_map,
    transpose_map,
)
from choifactor.cli import main as cli_main

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
GOLDEN = DATA / "golden"

COMMANDS = {
    "cp": ["cp"],
    "kraus": ["kraus"],
    "positive": ["positive", "--seed", "42"],
    "spectral": ["spectral"],
}


def _cgauss(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _pinned_hp_map() -> PairSumMap:
    # lowest seed whose map has a solidly negative Choi matrix and a
    # decisive, comfortably negative product-pairing certificate
    for seed in range(500):
        rng = np.random.default_rng(seed)
        vs = [_cgauss(rng, 2, 2) for _ in range(2)]
        ts = rng.standard_normal(2)
        phi = PairSumMap(2, tuple((t * v.conj().T, v) for t, v in zip(ts, vs)))
        if np.linalg.eigvalsh(choi(phi)).min() > -0.05:
            continue
        cert = check_positive(phi)
        if cert.verdict == "not-positive" and cert.value < -0.02:
            return phi
    raise RuntimeError("no suitable seed found")


def corpus() -> dict[str, dict]:
    rep = make_factor(2)
    v = _cgauss(np.random.default_rng(7), 2, 2)
    maps = {
        "identity": identity_map(2),
        "transpose": transpose_map(2),
        "trace": trace_map(2),
        "conjugation": conjugation_map(v),
        "trace_minus_id": map_sum(trace_map(2), map_scale(identity_map(2), -1.0)),
        "random_hp": _pinned_hp_map(),
    }
    return {name: formats.map_doc(phi, rep) for name, phi in maps.items()}


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, doc in corpus().items():
        path = DATA / f"{name}.json"
        path.write_text(formats.dumps(doc, pretty=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")
        for cmd, argv in COMMANDS.items():
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli_main(argv + [str(path)])
            if code != 0:
                raise RuntimeError(f"{cmd} on {name} exited {code}")
            out = GOLDEN / f"{name}__{cmd}.json"
            out.write_text(buf.getvalue(), encoding="utf-8")
            print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
