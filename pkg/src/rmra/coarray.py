"""Integer combinatorics of sparse linear sensor arrays.

Sensor positions live on the half-wavelength grid and are plain non-negative
integers. Everything here is exact integer arithmetic: pairwise differences,
lag weights, coarray holes and inter-element spacings. No floating point,
no physical units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "DuplicatePosition",
    "EmptyInput",
    "IesVector",
    "LagSet",
    "NoRepeatedRun",
    "NonPositiveSpacing",
    "SensorArray",
    "WeightTable",
    "array_from_ies",
    "canonicalize",
    "difference_coarray",
    "doubly_redundant_span",
    "extend_repeated_spacing",
    "holes",
    "ies_of",
    "mirror",
    "weight_table",
]


class DuplicatePosition(ValueError):
    """Two sensors landed on the same grid point."""


class EmptyInput(ValueError):
    """No sensor positions were given."""


class NonPositiveSpacing(ValueError):
    """Inter-element spacings must be positive integers."""


class NoRepeatedRun(ValueError):
    """The array has no consecutively repeated inter-element spacing."""


# An inter-element spacing vector: the consecutive gaps of an array. Prefix
# sums (from 0) recover the positions.
IesVector = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SensorArray:
    """A canonical sparse linear array.

    Positions are strictly increasing integers anchored at 0, so the aperture
    equals the last position. Use :func:`canonicalize` to build one from an
    arbitrary (unsorted, un-anchored) position list.
    """

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        pos = tuple(int(p) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        if len(pos) < 2:
            raise ValueError("an array needs at least two sensors")
        if pos[0] != 0:
            raise ValueError("canonical arrays start at position 0")
        for a, b in zip(pos, pos[1:]):
            if b == a:
                raise DuplicatePosition(f"duplicate position {a}")
            if b < a:
                raise ValueError("positions must be strictly increasing")

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def aperture(self) -> int:
        return self.positions[-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __repr__(self) -> str:
        return f"SensorArray({list(self.positions)})"


@dataclass(frozen=True, slots=True)
class WeightTable:
    """Lag-indexed pair counts of an array.

    ``counts[m]`` is the number of sensor pairs separated by exactly ``m``
    grid steps, for ``m`` in ``0..aperture``. ``counts[0]`` is fixed to the
    sensor count (self-differences) so that coarray-cardinality arithmetic
    works without special cases.
    """

    aperture: int
    counts: tuple[int, ...]

    def __getitem__(self, lag: int) -> int:
        return self.counts[lag]

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True, slots=True)
class LagSet:
    """Non-negative lags present in an array's difference coarray.

    Negative lags are implicit: the coarray is symmetric about zero.
    """

    aperture: int
    present: frozenset[int]

    def is_hole_free(self) -> bool:
        return len(self.present) == self.aperture + 1


def canonicalize(raw: Iterable[int]) -> SensorArray:
    """Sort, validate and translate positions so the first sensor sits at 0.

    Raises EmptyInput for an empty sequence and DuplicatePosition when two
    entries coincide.
    """
    entries = sorted(int(p) for p in raw)
    if not entries:
        raise EmptyInput("no positions given")
    if entries[0] < 0:
        raise ValueError("positions must be non-negative")
    for a, b in zip(entries, entries[1:]):
        if a == b:
            raise DuplicatePosition(f"duplicate position {a}")
    base = entries[0]
    return SensorArray(tuple(p - base for p in entries))


def weight_table(arr: SensorArray) -> WeightTable:
    """Count, for every lag, the sensor pairs separated by that lag."""
    counts = [0] * (arr.aperture + 1)
    counts[0] = arr.n
    pos = arr.positions
    for i in range(arr.n - 1):
        for j in range(i + 1, arr.n):
            counts[pos[j] - pos[i]] += 1
    return WeightTable(arr.aperture, tuple(counts))


def difference_coarray(arr: SensorArray) -> LagSet:
    """The set of non-negative lags realized by at least one sensor pair."""
    pos = arr.positions
    present = {0}
    for i in range(arr.n - 1):
        for j in range(i + 1, arr.n):
            present.add(pos[j] - pos[i])
    return LagSet(arr.aperture, frozenset(present))


def holes(lags: LagSet) -> tuple[int, ...]:
    """Missing lags in ``1..aperture``, sorted ascending."""
    return tuple(m for m in range(1, lags.aperture + 1) if m not in lags.present)


def doubly_redundant_span(w: WeightTable) -> int:
    """Largest m such that every lag in ``1..m`` has weight at least two.

    Returns 0 when already ``counts[1] < 2``. The symmetric doubly redundant
    coarray then has cardinality ``2*m + 1``.
    """
    m = 0
    while m < w.aperture and w.counts[m + 1] >= 2:
        m += 1
    return m


def ies_of(arr: SensorArray) -> IesVector:
    """Consecutive gaps between neighbouring sensors."""
    pos = arr.positions
    return tuple(b - a for a, b in zip(pos, pos[1:]))


def array_from_ies(ies: Sequence[int]) -> SensorArray:
    """Rebuild an array from its inter-element spacings (prefix sums from 0)."""
    spacings = [int(s) for s in ies]
    if not spacings:
        raise EmptyInput("empty spacing vector")
    if any(s < 1 for s in spacings):
        raise NonPositiveSpacing("spacings must be >= 1")
    positions = [0]
    for s in spacings:
        positions.append(positions[-1] + s)
    return SensorArray(tuple(positions))


def mirror(arr: SensorArray) -> SensorArray:
    """Reflect the array about its midpoint; weights are preserved."""
    l = arr.aperture
    return SensorArray(tuple(sorted(l - p for p in arr.positions)))


def _longest_run(ies: IesVector) -> tuple[int, int, int]:
    """(start, length, value) of the longest, then leftmost, repeated run."""
    best = (0, 0, 0)  # (start, length, value)
    i = 0
    while i < len(ies):
        j = i
        while j + 1 < len(ies) and ies[j + 1] == ies[i]:
            j += 1
        length = j - i + 1
        if length >= 2 and length > best[1]:
            best = (i, length, ies[i])
        i = j + 1
    if best[1] < 2:
        raise NoRepeatedRun("no inter-element spacing repeats consecutively")
    return best


def extend_repeated_spacing(arr: SensorArray, extra: int) -> SensorArray:
    """Grow an array by repeating its dominant spacing pattern.

    Finds the longest (leftmost on ties) run of a repeated spacing value in
    the IES vector and inserts ``extra`` more copies of that value inside the
    run. The sensor count grows by ``extra`` and the aperture by
    ``extra * value``.
    """
    if extra < 0:
        raise ValueError("extra must be non-negative")
    ies = ies_of(arr)
    start, length, value = _longest_run(ies)
    cut = start + length
    return array_from_ies(ies[:cut] + (value,) * extra + ies[cut:])
