"""File input/output: 16-bit mono WAV and two-column plot files.

All writers go through a temp file plus rename, so readers never observe a
partially written file.  Plot files are two space-separated columns (time in
seconds or frequency in Hz, then the value) with no header, formatted to
nine significant digits.
"""

from __future__ import annotations

import os
import tempfile
import wave
from pathlib import Path

import numpy as np

from .core import DiscreteSignal

__all__ = [
    "write_wav",
    "read_wav",
    "pcm16_quantise",
    "write_columns_csv",
    "read_columns_csv",
    "write_signal",
    "read_signal",
    "write_text",
]

_PCM_MAX = 32767
_PCM_MIN = -32768


def _atomic_write_bytes(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_text(path, text: str) -> None:
    """Atomically write a small text file (reports and the like)."""
    _atomic_write_bytes(Path(path), text.encode("utf-8"))


def pcm16_quantise(samples: np.ndarray, full_scale_v: float) -> np.ndarray:
    """Volts to 16-bit PCM: round(sample/full_scale*32767), saturating."""
    if not full_scale_v > 0.0:
        raise ValueError(f"full scale must be positive, got {full_scale_v}")
    scaled = np.rint(np.asarray(samples, dtype=np.float64) / full_scale_v * _PCM_MAX)
    return np.clip(scaled, _PCM_MIN, _PCM_MAX).astype("<i2")


def write_wav(path, signal: DiscreteSignal, full_scale_v: float = 1.0) -> None:
    """Write mono 16-bit little-endian PCM at the signal's (integer) rate."""
    path = Path(path)
    import io as _stdio

    buffer = _stdio.BytesIO()
    with wave.open(buffer, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(round(signal.rate_hz))
        wav.writeframes(pcm16_quantise(signal.samples, full_scale_v).tobytes())
    _atomic_write_bytes(path, buffer.getvalue())


def read_wav(path, full_scale_v: float = 1.0) -> DiscreteSignal:
    """Read back a WAV in the emitted format (mono, 16-bit PCM) as volts."""
    with wave.open(str(path), "rb") as wav:
        if wav.getnchannels() != 1 or wav.getsampwidth() != 2:
            raise ValueError(
                f"{path}: expected mono 16-bit PCM, got "
                f"{wav.getnchannels()} channel(s) at {8 * wav.getsampwidth()} bits"
            )
        rate = wav.getframerate()
        raw = wav.readframes(wav.getnframes())
    ints = np.frombuffer(raw, dtype="<i2").astype(np.float64)
    return DiscreteSignal(rate, ints / _PCM_MAX * full_scale_v)


def write_columns_csv(path, x: np.ndarray, y: np.ndarray) -> None:
    """Two space-separated columns, nine significant digits, no header."""
    lines = [f"{a:.9g} {b:.9g}" for a, b in zip(np.asarray(x), np.asarray(y), strict=True)]
    _atomic_write_bytes(Path(path), ("\n".join(lines) + "\n").encode("ascii"))


def read_columns_csv(path) -> tuple[np.ndarray, np.ndarray]:
    data = np.loadtxt(path, dtype=np.float64, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, got {data.shape[1]}")
    return data[:, 0], data[:, 1]


def _rate_from_times(times: np.ndarray, path) -> float:
    if times.size < 2:
        raise ValueError(f"{path}: need at least two rows to infer the sampling rate")
    step = (times[-1] - times[0]) / (times.size - 1)
    if not step > 0.0:
        raise ValueError(f"{path}: time column must be increasing")
    return round(1.0 / step, 6)


def write_signal(path, signal: DiscreteSignal, full_scale_v: float = 1.0) -> None:
    """Write a signal as .wav or as a time/value plot file, by extension."""
    path = Path(path)
    if path.suffix.lower() == ".wav":
        write_wav(path, signal, full_scale_v)
    else:
        times = np.arange(len(signal)) / signal.rate_hz
        write_columns_csv(path, times, signal.samples)


def read_signal(path, full_scale_v: float = 1.0) -> DiscreteSignal:
    """Read a signal from .wav, or from a plot file with the rate inferred."""
    path = Path(path)
    if path.suffix.lower() == ".wav":
        return read_wav(path, full_scale_v)
    times, values = read_columns_csv(path)
    return DiscreteSignal(_rate_from_times(times, path), values)
