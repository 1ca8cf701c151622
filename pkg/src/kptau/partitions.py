"""Integer partitions, Frobenius coordinates and enumeration by weight."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` compare and hash equal.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(s) for s in text.split(",")))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        """Zero-based part access, returning 0 beyond the length."""
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return f"Partition({self.parts})"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def particle_coordinates(self, n: int | None = None) -> tuple[int, ...]:
        """l_i = lambda_i - i for i = 1..n (default: the length)."""
        n = self.length if n is None else n
        return tuple(self[i] - (i + 1) for i in range(n))

    def frobenius(self) -> "FrobeniusCoords":
        return frobenius_of(self)

    def is_hook(self) -> bool:
        return self.rank() == 1

    def rank(self) -> int:
        return sum(1 for i, p in enumerate(self.parts) if p > i)


@dataclass(frozen=True)
class FrobeniusCoords:
    """Frobenius notation (a_1 > ... > a_r >= 0 | b_1 > ... > b_r >= 0)."""

    arms: tuple[int, ...] = ()
    legs: tuple[int, ...] = ()

    def __post_init__(self):
        arms = tuple(int(a) for a in self.arms)
        legs = tuple(int(b) for b in self.legs)
        if len(arms) != len(legs):
            raise ValueError("arms and legs must have equal length")
        for seq in (arms, legs):
            if any(s < 0 for s in seq) or any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError(f"Frobenius coordinates must be strictly decreasing and >= 0: {seq}")
        object.__setattr__(self, "arms", arms)
        object.__setattr__(self, "legs", legs)

    @property
    def rank(self) -> int:
        return len(self.arms)

    @property
    def weight(self) -> int:
        return self.rank + sum(self.arms) + sum(self.legs)

    def __str__(self):
        return "(" + ",".join(map(str, self.arms)) + "|" + ",".join(map(str, self.legs)) + ")"

    def to_partition(self) -> Partition:
        return partition_of_frobenius(self)


def frobenius_of(p: Partition) -> FrobeniusCoords:
    conj = p.conjugate()
    r = p.rank()
    arms = tuple(p[i] - i - 1 for i in range(r))
    legs = tuple(conj[i] - i - 1 for i in range(r))
    return FrobeniusCoords(arms, legs)


def partition_of_frobenius(fc: FrobeniusCoords) -> Partition:
    r = fc.rank
    if r == 0:
        return Partition(())
    # rows 1..r from the arms, rows below the diagonal block from the legs
    nrows = max(r, fc.legs[0] + 1)
    rows = []
    for i in range(nrows):
        if i < r:
            rows.append(fc.arms[i] + i + 1)
        else:
            rows.append(sum(1 for j in range(r) if fc.legs[j] + j >= i))
    return Partition(tuple(rows))


def hook_from(a: int, b: int) -> Partition:
    """The hook (a | b) = (a+1, 1^b)."""
    if a < 0 or b < 0:
        raise ValueError("hook arm and leg must be non-negative")
    return Partition((a + 1,) + (1,) * b)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse-lexicographic order."""
    max_part = n if max_part is None else max_part

    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def partitions_up_to_weight(W: int) -> list[Partition]:
    if W < 0:
        raise ValueError("W must be non-negative")
    return [p for n in range(W + 1) for p in partitions_of(n)]


def partition_count(n: int) -> int:
    """Number of partitions of n via Euler's pentagonal recurrence."""
    counts = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * counts[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * counts[m - g2]
            k += 1
        counts[m] = total
    return counts[n]
