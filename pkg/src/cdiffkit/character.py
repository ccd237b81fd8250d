"""Quadratic character and absolute trace on a built field."""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from .errors import CharacteristicError
from .field import Field


class Chi(IntEnum):
    """Value of the quadratic character; ZERO marks the input 0, where chi is undefined."""

    NONSQUARE = -1
    ZERO = 0
    SQUARE = 1


def chi(F: Field, x):
    """Quadratic character via the parity of the discrete log.

    Scalar input gives a :class:`Chi`; array input gives an int8 array with
    +1/-1 and 0 at the zero element.
    """
    if F.p == 2:
        raise CharacteristicError("the quadratic character needs odd characteristic")
    if isinstance(x, np.ndarray):
        lg = F.log[x]
        out = np.where(lg % 2 == 0, 1, -1).astype(np.int8)
        out[np.asarray(x) == 0] = 0
        return out
    F._check(x)
    if x == 0:
        return Chi.ZERO
    return Chi.SQUARE if int(F.log[x]) % 2 == 0 else Chi.NONSQUARE


def trace(F: Field, x):
    """Absolute trace x + x^p + ... + x^(p^(n-1)), a code in [0, p)."""
    acc = 0 if not isinstance(x, np.ndarray) else np.zeros_like(x, dtype=np.int64)
    y = x
    for _ in range(F.n):
        acc = F.add(acc, y)
        y = F.pow(y, F.p)
    return acc
