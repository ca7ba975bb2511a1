"""Chaotic iterations over boolean cell vectors.

At step ``k`` only cell ``s[k]`` is updated, receiving component ``s[k]`` of
``f(x)``. Indices are 0-based; a 1-based index ``i`` of the usual notation is
cell ``i - 1`` here.
"""

from itertools import islice
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import DimensionMismatch, EmptyStrategy, StrategyExhausted


class Strategy:
    """A sequence of cell indices in ``[0, size)``.

    ``source`` is either a finite sequence or a zero-argument callable
    returning a fresh iterator, so unbounded streams can be replayed from
    their seed without materialising them.
    """

    def __init__(self, source, size: int, offset: int = 0):
        if size < 1:
            raise ValueError("strategy domain size must be positive")
        self.size = int(size)
        self.offset = int(offset)
        if callable(source):
            self._factory = source
            self._terms = None
        else:
            terms = np.asarray(source, dtype=np.int64).ravel()
            if terms.size and (terms.min() < 0 or terms.max() >= size):
                raise ValueError(f"strategy terms must lie in [0, {size})")
            self._factory = None
            self._terms = terms

    @property
    def finite(self) -> bool:
        return self._terms is not None

    def __len__(self) -> int:
        if self._terms is None:
            raise TypeError("lazy strategy has no length")
        return max(self._terms.size - self.offset, 0)

    def __iter__(self) -> Iterator[int]:
        if self._terms is not None:
            return iter(self._terms[self.offset:].tolist())
        return islice(self._factory(), self.offset, None)

    def take(self, n: int) -> np.ndarray:
        """First ``n`` terms as an int64 array."""
        if self._terms is not None:
            out = self._terms[self.offset:self.offset + n]
        else:
            out = np.fromiter(islice(iter(self), n), dtype=np.int64)
        if out.size < n:
            raise StrategyExhausted(int(out.size))
        return out

    def __repr__(self):
        kind = f"{len(self)} terms" if self.finite else "lazy"
        return f"Strategy({kind}, size={self.size}, offset={self.offset})"


def initial(s: Strategy) -> int:
    try:
        return int(s.take(1)[0])
    except StrategyExhausted:
        raise EmptyStrategy("initial term of an empty strategy") from None


def shift(s: Strategy) -> Strategy:
    """Drop the first term."""
    if s.finite and len(s) == 0:
        raise EmptyStrategy("cannot shift an empty strategy")
    src = s._terms if s.finite else s._factory
    out = Strategy(src, s.size, s.offset + 1)
    if out.finite and len(out) == 0:
        raise EmptyStrategy("shifting a one-term strategy leaves nothing")
    return out


def negation(x) -> np.ndarray:
    """Vectorial boolean negation: every cell flipped."""
    return (1 - np.asarray(x, dtype=np.uint8)).astype(np.uint8)


def _as_state(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8).ravel()
    if x.size and x.max() > 1:
        raise ValueError("cells must be 0 or 1")
    return x


def iterate(x0, s: Strategy | Iterable[int], f: Callable = negation, n: int = 0) -> np.ndarray:
    """Run ``n`` chaotic-iteration steps from ``x0``; returns a new state."""
    x = _as_state(x0).copy()
    if isinstance(s, Strategy):
        if s.size != x.size:
            raise DimensionMismatch(f"strategy domain {s.size} != state size {x.size}")
        terms = s.take(n)
    else:
        terms = np.fromiter(islice(iter(s), n), dtype=np.int64)
        if terms.size < n:
            raise StrategyExhausted(int(terms.size))
    if n == 0:
        return x
    if terms.min() < 0 or terms.max() >= x.size:
        raise DimensionMismatch("strategy term outside the state")
    if f is negation:
        # each cell ends up flipped iff it was selected an odd number of times
        flips = np.bincount(terms, minlength=x.size) & 1
        return (x ^ flips.astype(np.uint8)).astype(np.uint8)
    for k in terms.tolist():
        fx = np.asarray(f(x), dtype=np.uint8)
        if fx.shape != x.shape:
            raise DimensionMismatch("iterate function changed the state size")
        x[k] = fx[k]
    return x
