"""Julia set approximation by random inverse iteration from a base point.

Iterating z <- +-sqrt(z - c) with random branch choices walks the backward
orbit of the starting point, which accumulates on the Julia set of
x^2 + c.  This renderer is illustrative and runs in double precision,
decoupled from the exact certification core.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass

DEFAULT_POINTS = 200_000
DEFAULT_BURN_IN = 50


@dataclass(frozen=True)
class RenderConfig:
    width: int = 800
    height: int = 800
    #: (re_min, re_max, im_min, im_max)
    bounds: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    n_points: int = DEFAULT_POINTS
    burn_in: int = DEFAULT_BURN_IN
    seed: int = 0

    def __post_init__(self) -> None:
        re_min, re_max, im_min, im_max = self.bounds
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if not (re_max > re_min and im_max > im_min):
            raise ValueError("bounds must have positive area")
        if self.n_points < 1:
            raise ValueError("need at least one point")
        if self.burn_in < 0:
            raise ValueError("burn-in must be nonnegative")


def sample_backward(c: complex, a: complex, cfg: RenderConfig) -> list[complex]:
    """Random backward orbit of a under x^2 + c, burn-in discarded.

    The branch sign at each step comes from a PRNG seeded with cfg.seed, so
    the output is identical for identical configurations.
    """
    rng = random.Random(cfg.seed)
    z = complex(a)
    c = complex(c)
    points: list[complex] = []
    total = cfg.burn_in + cfg.n_points
    for i in range(total):
        z = cmath.sqrt(z - c)
        if rng.getrandbits(1):
            z = -z
        if i >= cfg.burn_in:
            points.append(z)
    return points


def render(points: list[complex], cfg: RenderConfig) -> bytes:
    """Bin points into a binary PGM (P5) image, one byte per pixel.

    Hit pixels are 255, the rest 0; points outside the bounds are dropped.
    """
    re_min, re_max, im_min, im_max = cfg.bounds
    re_scale = cfg.width / (re_max - re_min)
    im_scale = cfg.height / (im_max - im_min)
    pixels = bytearray(cfg.width * cfg.height)
    for z in points:
        ix = int((z.real - re_min) * re_scale)
        iy = int((im_max - z.imag) * im_scale)  # image row 0 is the top
        if 0 <= ix < cfg.width and 0 <= iy < cfg.height:
            pixels[iy * cfg.width + ix] = 255
    header = f"P5\n{cfg.width} {cfg.height}\n255\n".encode("ascii")
    return header + bytes(pixels)


def points_csv(points: list[complex]) -> str:
    """Points as 're,im' rows."""
    return "".join(f"{z.real!r},{z.imag!r}\n" for z in points)
