"""Double description method over the integers.

Computes the extreme rays and lineality space of ``{z : A z >= 0}``. Used
in both directions: facets of a point set (via the homogenised polar cone)
and vertices of an inequality system.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .intlinalg import primitive


def _dot(a: Sequence[int], z: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, z) if x)


def _combine(p: Sequence[int], q: Sequence[int], cp: int, cq: int) -> tuple[int, ...]:
    return primitive([cp * x + cq * y for x, y in zip(p, q)])


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int
                 ) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and lineality basis of ``{z in R^dim : a.z >= 0 for a in constraints}``.

    Rays are primitive integer vectors, one per extreme ray of the cone
    modulo its lineality space. Duplicate rays never occur.
    """
    lin: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    zeros: list[list[bool]] = []  # zeros[r][c]: ray r vanishes on processed constraint c
    processed = 0

    for a in constraints:
        a = tuple(int(x) for x in a)
        lin_vals = [_dot(a, l) for l in lin]
        pivot = next((i for i, v in enumerate(lin_vals) if v != 0), None)
        if pivot is not None:
            l0 = lin[pivot]
            c0 = lin_vals[pivot]
            if c0 < 0:
                l0 = tuple(-x for x in l0)
                c0 = -c0
            new_lin = []
            for i, l in enumerate(lin):
                if i == pivot:
                    continue
                v = lin_vals[i]
                new_lin.append(_combine(l, l0, c0, -v) if v else l)
            new_rays = []
            for r in rays:
                v = _dot(a, r)
                new_rays.append(_combine(r, l0, c0, -v) if v else r)
            for z in zeros:
                z.append(True)
            rays = new_rays
            rays.append(l0)
            zeros.append([True] * processed + [False])
            lin = new_lin
            processed += 1
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = []
        new_zeros = []
        if pos and neg:
            zmat = np.array(zeros, dtype=bool).reshape(len(rays), processed)
            pointed_dim = dim - len(lin)
            pairs = _kernels.adjacent_pairs(zmat, pos, neg, max(pointed_dim - 2, 0))
            for i, j in pairs:
                r = _combine(rays[j], rays[i], vals[i], -vals[j])
                new_rays.append(r)
                new_zeros.append([x and y for x, y in zip(zeros[i], zeros[j])] + [True])
        kept = [(rays[i], zeros[i] + [False]) for i in pos] + \
               [(rays[i], zeros[i] + [True]) for i in zer]
        rays = [r for r, _ in kept] + new_rays
        zeros = [z for _, z in kept] + new_zeros
        processed += 1

    return rays, lin
