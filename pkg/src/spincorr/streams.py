"""Counter-based random substreams for reproducible (parallel) Monte Carlo.

Every sampling routine in this package draws its uniforms from a Philox
counter-based generator keyed by ``(seed, stream)``.  Trial ``i`` of a run
owns a fixed window of draws in that keyed stream, so the result of a run
depends only on the seed and the configuration, never on how the trials are
chunked across workers or in which order the chunks execute.
"""

from __future__ import annotations

from math import lcm

import numpy as np

# Philox emits 64-bit words in blocks of four; one block feeds four float64
# uniforms, so counter jumps are only exact at multiples of four draws.
BLOCK_DRAWS = 4

_U64_MAX = 2**64 - 1


def substream(seed: int, stream: int = 0, draw_offset: int = 0) -> np.random.Generator:
    """Uniform generator for the ``(seed, stream)`` key, positioned at ``draw_offset``.

    ``draw_offset`` counts float64 draws already consumed and must be a
    multiple of :data:`BLOCK_DRAWS`.
    """
    for name, value in (("seed", seed), ("stream", stream)):
        if not 0 <= value <= _U64_MAX:
            raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {value}")
    bits = np.random.Philox(key=np.array([seed, stream], dtype=np.uint64))
    if draw_offset:
        if draw_offset < 0 or draw_offset % BLOCK_DRAWS:
            raise ValueError(f"draw_offset must be a nonnegative multiple of {BLOCK_DRAWS}")
        bits.advance(draw_offset // BLOCK_DRAWS)
    return np.random.Generator(bits)


def chunk_bounds(n: int, workers: int, draws_per_trial: int) -> list[tuple[int, int]]:
    """Split ``n`` trials into contiguous chunks with block-aligned start offsets.

    Each chunk ``(lo, hi)`` starts at draw offset ``lo * draws_per_trial``,
    which is kept a multiple of :data:`BLOCK_DRAWS` so a worker can jump the
    generator straight to its window.  The union of chunks is always
    ``[0, n)`` in order, whatever ``workers`` is.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if draws_per_trial < 1:
        raise ValueError("draws_per_trial must be at least 1")
    align = lcm(BLOCK_DRAWS, draws_per_trial) // draws_per_trial
    if workers == 1 or n <= align:
        return [(0, n)]
    size = -(-n // workers)
    size = -(-size // align) * align
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]
