"""CSV/JSON serialization and run manifests.

Complex values are always written as separate re/im columns with 17
significant digits, so reading a file back reproduces every double exactly.
"""

import csv
import hashlib
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from pslab import __version__
from pslab.exact import ExactSpectrum
from pslab.linalg import EigenResult

SPECTRUM_COLUMNS = ("index", "re", "im", "modulus", "kind")


def fmt(x) -> str:
    return format(float(x), ".17g")


def _open_w(path):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _writer(f):
    return csv.writer(f, lineterminator="\n")


def spectrum_rows(spectrum):
    if isinstance(spectrum, ExactSpectrum):
        for i, z in enumerate(spectrum.nonzero_roots):
            yield z, "outlier" if i == spectrum.outlier_index else "nonzero"
        for _ in range(spectrum.zero_algebraic_multiplicity):
            yield 0j, "zero"
    elif isinstance(spectrum, EigenResult):
        for z in spectrum.values:
            yield z, "zero" if z == 0 else "nonzero"
    else:
        raise TypeError(f"cannot serialize {type(spectrum).__name__} as a spectrum")


def write_spectrum_csv(path, spectrum):
    with _open_w(path) as f:
        w = _writer(f)
        w.writerow(SPECTRUM_COLUMNS)
        for i, (z, kind) in enumerate(spectrum_rows(spectrum)):
            z = complex(z)
            w.writerow([i, fmt(z.real), fmt(z.imag), fmt(abs(z)), kind])


def read_spectrum_csv(path):
    """Return (values, kinds) from a spectrum CSV."""
    with open(path, encoding="utf-8", newline="") as f:
        r = csv.DictReader(f)
        if tuple(r.fieldnames or ()) != SPECTRUM_COLUMNS:
            raise ValueError(f"{path}: unexpected header {r.fieldnames}")
        rows = list(r)
    values = np.array([complex(float(x["re"]), float(x["im"])) for x in rows], dtype=np.complex128)
    return values, [x["kind"] for x in rows]


def write_table_csv(path, columns, rows):
    with _open_w(path) as f:
        w = _writer(f)
        w.writerow(columns)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else fmt(v) for v in row])


def write_matrix_csv(path, values):
    """Plain numeric matrix, one grid row per line, no header."""
    with _open_w(path) as f:
        w = _writer(f)
        for row in np.asarray(values, dtype=float):
            w.writerow([fmt(v) for v in row])


def read_matrix_csv(path) -> np.ndarray:
    with open(path, encoding="utf-8", newline="") as f:
        return np.array([[float(v) for v in row] for row in csv.reader(f)])


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path, obj):
    with _open_w(path) as f:
        json.dump(to_jsonable(obj), f, indent=2, sort_keys=True, allow_nan=True)
        f.write("\n")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _now():
    return datetime.now(timezone.utc)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seeds: list = field(default_factory=list)
    version: str = __version__
    started: str = field(default_factory=lambda: _now().isoformat())
    finished: str | None = None
    outputs: dict = field(default_factory=dict)

    def record(self, path):
        path = Path(path)
        self.outputs[path.name] = sha256_file(path)

    def finish(self, directory):
        self.finished = _now().isoformat()
        write_json(Path(directory) / "manifest.json", {
            "command": self.command,
            "parameters": self.parameters,
            "seeds": self.seeds,
            "version": self.version,
            "started": self.started,
            "finished": self.finished,
            "outputs": self.outputs,
        })


def verify_manifest(directory) -> list:
    """Names of manifest outputs that are missing or whose digest differs."""
    directory = Path(directory)
    with open(directory / "manifest.json", encoding="utf-8") as f:
        manifest = json.load(f)
    bad = []
    for name, digest in manifest["outputs"].items():
        p = directory / name
        if not p.exists() or sha256_file(p) != digest:
            bad.append(name)
    return bad


def run_directory(out, command) -> Path:
    """Fresh ``<out>/<command>-<timestamp>`` directory."""
    stamp = _now().strftime("%Y%m%dT%H%M%S%fZ")
    path = Path(out) / f"{command}-{stamp}"
    suffix = 1
    while path.exists():
        path = Path(out) / f"{command}-{stamp}-{suffix}"
        suffix += 1
    os.makedirs(path)
    return path
