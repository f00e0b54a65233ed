"""Thread-count policy for the FFT-heavy code paths.

The WALL_THREADS environment variable caps internal parallelism; unset or
invalid values fall back to the machine's CPU count.  Everything routed
through here stays deterministic: thread count changes speed, never results.
"""

from __future__ import annotations

import os

__all__ = ["fft_workers"]


def fft_workers() -> int:
    available = os.cpu_count() or 1
    raw = os.environ.get("WALL_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        return available
    if cap < 1:
        return available
    return min(cap, available)
