"""Text formats: series CSV in, periodogram/density CSV and spectrogram files out.

Series files are comma separated ``time,value[,uncertainty]`` rows. Lines
starting with ``#`` and blank lines are ignored, and a first data line that
does not parse as numbers is taken as a header.

Spectrogram files (``.nustg``)::

    # nust v1
    key=value key=value ...        (JSON-encoded values)
    tau_0,tau_1,...
    f_0,f_1,...
    <n_tau rows of n_f powers>
    <n_tau rows of n_f 0/1 validity flags>

Floats are written with ``repr`` so a write/read cycle is bit exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import FrequencyGrid, Periodogram, Spectrogram, TimeGrid, TimeSeries, make_time_series
from .errors import FormatVersionMismatch, ParseError, ValidationError

MAGIC = "# nust v1"


def _parse_row(text, lineno):
    parts = [p.strip() for p in text.split(",")]
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-numeric field in {text!r}", lineno) from None


def parse_series(lines) -> TimeSeries:
    rows = []
    ncol = None
    seen_data = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_data:
            seen_data = True
            try:
                _parse_row(line, lineno)
            except ParseError:
                continue  # header row
        row = _parse_row(line, lineno)
        if len(row) not in (2, 3):
            raise ParseError(f"expected 2 or 3 columns, got {len(row)}", lineno)
        if ncol is None:
            ncol = len(row)
        elif len(row) != ncol:
            raise ParseError(f"expected {ncol} columns, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ValidationError("no data rows found")
    data = np.array(rows)
    errs = data[:, 2] if ncol == 3 else None
    return make_time_series(data[:, 0], data[:, 1], errs)


def read_series(path) -> TimeSeries:
    with open(path, encoding="utf-8") as fh:
        return parse_series(fh)


def write_series(series: TimeSeries, path, header=True):
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write("time,value,uncertainty\n")
        for row in zip(series.times, series.values, series.uncertainties):
            fh.write(_floats(row) + "\n")


def write_columns(path, names, *columns):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(names) + "\n")
        for row in zip(*columns):
            fh.write(_floats(row) + "\n")


def write_periodogram(pgram: Periodogram, path):
    write_columns(path, ("frequency", "power"), pgram.grid.values, pgram.power)


def _floats(values):
    return ",".join(repr(float(v)) for v in values)


def _encode_meta(meta):
    parts = []
    for key, value in meta.items():
        enc = json.dumps(value)
        if any(ch.isspace() for ch in key + enc) or "=" in key:
            raise ValidationError(f"metadata entry {key!r} cannot be serialized on one line")
        parts.append(f"{key}={enc}")
    return " ".join(parts)


def _decode_meta(line, lineno):
    meta = {}
    for item in line.split():
        key, sep, enc = item.partition("=")
        if not sep:
            raise ParseError(f"bad metadata entry {item!r}", lineno)
        try:
            meta[key] = json.loads(enc)
        except json.JSONDecodeError:
            raise ParseError(f"bad metadata value {enc!r}", lineno) from None
    return meta


def write_spectrogram(spec: Spectrogram, path):
    lines = [
        MAGIC,
        _encode_meta(spec.meta),
        _floats(spec.time_grid.values),
        _floats(spec.freq_grid.values),
    ]
    lines += [_floats(row) for row in spec.power]
    lines += [",".join("1" if v else "0" for v in row) for row in spec.valid]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _grid(cls, values):
    values = np.array(values)
    values.setflags(write=False)
    return cls(float(values[0]), float(values[-1]), int(values.size), values)


def read_spectrogram(path) -> Spectrogram:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != MAGIC:
        found = lines[0].strip() if lines else "<empty file>"
        raise FormatVersionMismatch(f"expected {MAGIC!r}, found {found!r}")
    if len(lines) < 4:
        raise ParseError("truncated header", len(lines))
    meta = _decode_meta(lines[1], 2)
    taus = _parse_row(lines[2], 3)
    freqs = _parse_row(lines[3], 4)
    nt, nf = len(taus), len(freqs)
    body = lines[4:]
    if len(body) != 2 * nt:
        raise ParseError(f"expected {2 * nt} matrix rows, found {len(body)}", 5 + min(len(body), 2 * nt))
    power = np.empty((nt, nf))
    valid = np.empty((nt, nf), dtype=bool)
    for j in range(nt):
        row = _parse_row(body[j], 5 + j)
        if len(row) != nf:
            raise ParseError(f"expected {nf} powers, got {len(row)}", 5 + j)
        power[j] = row
    for j in range(nt):
        lineno = 5 + nt + j
        flags = body[nt + j].split(",")
        if len(flags) != nf or any(v not in ("0", "1") for v in flags):
            raise ParseError("mask rows must hold 0/1 flags, one per frequency", lineno)
        valid[j] = [v == "1" for v in flags]
    return Spectrogram(_grid(TimeGrid, taus), _grid(FrequencyGrid, freqs), power, valid, meta)
