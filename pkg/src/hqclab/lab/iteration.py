"""The exponent-improvement iteration beta_{m+1} = (1 + alpha) beta_m.

Run until the exponent first exceeds 1.  If any stage lands within 1e-6 of
the excluded endpoint 1, the starting exponent is decreased by the minimal
dyadic shift 1e-3 * 2^-j restoring clearance (always possible because the
trace estimate survives lowering the exponent).
"""

from dataclasses import dataclass, field

ENDPOINT_CLEARANCE = 1e-6


@dataclass
class IterationTrace:
    alpha: float
    beta_seq: list
    m0: int
    endpoint_shift: float = 0.0
    stage_constants: list = field(default_factory=list)

    @property
    def beta_final(self):
        return self.beta_seq[self.m0]


def _sequence(alpha, beta0):
    seq = [beta0]
    while seq[-1] <= 1.0:
        seq.append((1.0 + alpha) * seq[-1])
    return seq


def _cleared(seq):
    return all(abs(b - 1.0) >= ENDPOINT_CLEARANCE for b in seq)


def exponent_iteration(alpha, beta0) -> IterationTrace:
    """Iterate the exponent to the first stage above 1.

    beta_seq[m] = (1 + alpha)^m * beta0 by construction (each entry is the
    literal float product of its predecessor), m0 is minimal with
    beta_{m0} > 1, and endpoint_shift records any applied reduction.
    """
    alpha = float(alpha)
    beta0 = float(beta0)
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must be in (0, 1), got {alpha:g}")
    if not (0.0 < beta0 < 1.0):
        raise ValueError(f"beta0 must be in (0, 1), got {beta0:g}")

    seq = _sequence(alpha, beta0)
    shift = 0.0
    if not _cleared(seq):
        for j in range(40, -1, -1):
            cand_shift = 1e-3 * 2.0 ** (-j)
            cand = beta0 - cand_shift
            if cand <= 0.0:
                continue
            cand_seq = _sequence(alpha, cand)
            if _cleared(cand_seq):
                seq, shift = cand_seq, cand_shift
                break
        else:
            raise ValueError("no dyadic shift clears the endpoint")
    return IterationTrace(alpha, seq, len(seq) - 1, shift)
