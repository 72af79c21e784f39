"""Deterministic CSV and JSON manifest output.

Every numeric CSV field is serialized with up to 17 significant digits
(%.17g), which round-trips double precision exactly, so re-running a
command with the same flags and seed reproduces the file byte for byte.
Files are UTF-8 with LF line endings.
"""

import json
from pathlib import Path

from .echo import EchoRecord

TRACE_HEADER = ["t", "E_mean", "E_std", "S_mean", "S_std", "f_mean", "f_std"]
CURVE_HEADER = ["t_e", "E_mean", "E_std", "S_mean", "S_std", "f_mean", "f_std"]


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def records_to_rows(records) -> list:
    return [
        (
            str(r.t),
            fmt(r.e_mean),
            fmt(r.e_std),
            fmt(r.s_mean),
            fmt(r.s_std),
            fmt(r.f_mean),
            fmt(r.f_std),
        )
        for r in records
    ]


def write_csv(path, header, rows) -> None:
    path = Path(path)
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_records_csv(path) -> list:
    """Read a trace or echo-curve CSV back into records."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty CSV")
    header = lines[0].split(",")
    if header not in (TRACE_HEADER, CURVE_HEADER):
        raise ValueError(f"{path}: unexpected CSV header {header!r}")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != 7:
            raise ValueError(f"{path}: malformed row {line!r}")
        records.append(
            EchoRecord(
                t=int(cells[0]),
                e_mean=float(cells[1]),
                e_std=float(cells[2]),
                s_mean=float(cells[3]),
                s_std=float(cells[4]),
                f_mean=float(cells[5]),
                f_std=float(cells[6]),
            )
        )
    return records


def write_manifest(path, manifest: dict) -> None:
    Path(path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )


def load_manifest(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def manifest_path_for(csv_path) -> Path:
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.stem + ".manifest.json")
