"""Randomized search for points where |f(a)|_p > |g(a)|_p.

Points are integer digit strings in [0, p^N) per coordinate (times p for the
germ variant, which samples the maximal ideal p Z_p).  Values are computed
exactly in Q and compared by p-adic valuation.  A sample where both values
vanish modulo p^N says nothing at this precision and is skipped.

This is a falsifier: finding no counterexample proves nothing.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..coefficients.padic import valuation_of_rational
from ..coefficients.values import INFINITY, value_to_json
from ..errors import PrecisionExhausted
from ..expr.evaluate import PointRing, evaluate


@dataclass(frozen=True)
class SampleReport:
    samples: int
    checked: int
    skipped: int
    counterexample: tuple = None
    values: tuple = None
    seed: int = 0

    @property
    def found(self):
        return self.counterexample is not None

    def to_json(self):
        out = {
            "verdict": "counterexample" if self.found else "no-counterexample",
            "samples": self.samples,
            "checked": self.checked,
            "skipped": self.skipped,
            "seed": self.seed,
        }
        if self.found:
            out["point"] = [str(x) for x in self.counterexample]
            out["valuations"] = [value_to_json(v) for v in self.values]
        return out

    def __str__(self):
        if self.found:
            point = ", ".join(str(x) for x in self.counterexample)
            vf, vg = self.values
            return f"counterexample at ({point}): v(f) = {vf} < v(g) = {vg}"
        return f"no counterexample in {self.checked} samples ({self.skipped} skipped)"


def _valuation(x, p):
    return INFINITY if x == 0 else valuation_of_rational(x, p)


def sample_points(nvars, p, prec, samples, seed, germ=False):
    """The deterministic point sequence used by the sampler."""
    rng = random.Random(seed)
    mod = p ** prec
    scale = p if germ else 1
    return [tuple(scale * rng.randrange(mod) for _ in range(nvars)) for _ in range(samples)]


def _check_chunk(args):
    f, g, p, prec, points, offset = args
    skipped = 0
    for i, a in enumerate(points):
        ring = PointRing(a, p)
        vf = _valuation(evaluate(f, ring), p)
        vg = _valuation(evaluate(g, ring), p)
        if vf >= prec and vg >= prec:
            skipped += 1
            continue
        if vf < vg:
            return offset + i, a, (vf, vg), skipped
    return None, None, None, skipped


def sample_p_definiteness(f, g, p, prec, samples, seed=0, germ=False, nvars=None, workers=1):
    """Look for a with v_p(f(a)) < v_p(g(a)); f, g are expression trees.

    With several workers the point list is split into contiguous chunks and
    the earliest counterexample wins, so the report does not depend on the
    number of workers.
    """
    from ..expr.ast import max_var

    if nvars is None:
        nvars = max(1, max_var(f), max_var(g))
    points = sample_points(nvars, p, prec, samples, seed, germ)
    if workers <= 1 or samples < 2 * workers:
        chunks = [(f, g, p, prec, points, 0)]
    else:
        size = -(-samples // workers)
        chunks = [(f, g, p, prec, points[i : i + size], i) for i in range(0, samples, size)]
    if len(chunks) == 1:
        results = [_check_chunk(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_chunk, chunks))
    hits = [r for r in results if r[0] is not None]
    if hits:
        index, point, values, _ = min(hits, key=lambda r: r[0])
        skipped = sum(r[3] for r in results if r[0] is None or r[0] <= index)
        # Skips after the first hit in the winning chunk were never counted.
        return SampleReport(samples, index + 1 - skipped, skipped, point, values, seed)
    skipped = sum(r[3] for r in results)
    if skipped == samples:
        raise PrecisionExhausted(f"both sides vanish mod {p}^{prec} at every sample")
    return SampleReport(samples, samples - skipped, skipped, seed=seed)
