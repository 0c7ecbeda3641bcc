"""Deterministic random-stream management for Monte Carlo walks.

Walks are grouped into fixed-size batches.  Batch ``k`` draws from its own
counter-based Philox stream keyed by ``(seed, k)``, and results are always
reassembled in batch order, so output is bit-identical no matter how
batches are scheduled across workers.
"""

import numpy as np

BATCH_SIZE = 4096


def batch_generator(seed: int, batch_index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, batch_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def batch_sizes(n_total: int, batch_size: int = BATCH_SIZE) -> list[int]:
    """Split n_total into fixed-size batches (last one may be short)."""
    if n_total <= 0:
        return []
    full, rem = divmod(n_total, batch_size)
    return [batch_size] * full + ([rem] if rem else [])


def derive_seed(seed: int, label: str) -> int:
    """Stable 64-bit sub-seed for an independent walk population."""
    h = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    for ch in label.encode("utf-8"):
        h = np.uint64((int(h) * 1099511628211 + ch) & 0xFFFFFFFFFFFFFFFF)
    return int(h)
