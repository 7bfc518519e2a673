"""Sparse exact row echelon forms.

Rows are dicts ``{column: coefficient}``; columns are ordered integers and
a pivot row's leading entry sits at its smallest column.  Over Q the rows
are kept as primitive integer vectors (fraction-free elimination with
content removal); over F_p they are kept monic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping

from .polyring import Field


def _content(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def clear_denominators(vec: Mapping[int, Fraction]) -> tuple:
    """Return ``(ints, s)`` with ``ints == s * vec`` and ``ints`` integral."""
    s = reduce(lcm, (Fraction(c).denominator for c in vec.values()), 1)
    return {k: int(c * s) for k, c in vec.items()}, s


class Echelon:
    """Incrementally built echelon basis of a subspace of k^columns.

    ``reduce`` is canonical: the result is supported on non-pivot columns
    only and does not depend on the order the rows were inserted in.
    Optional tags are carried along with rows so that linear dependencies
    (kernel vectors) can be recovered.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict = {}  # pivot column -> row
        self.tags: dict = {}  # pivot column -> tag row

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set:
        return set(self.rows)

    # Over Q, `vec` is integral and the returned `scale` satisfies
    # reduced == scale * (input - combination of rows).
    def _reduce_int(self, vec: dict, tag: dict | None):
        scale = Fraction(1)
        heap = [c for c in vec if c in self.rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            b = vec.get(col)
            if not b or col not in self.rows:
                continue
            row = self.rows[col]
            a = row[col]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            if ma != 1:
                for k in vec:
                    vec[k] *= ma
                if tag is not None:
                    for k in tag:
                        tag[k] *= ma
                scale *= ma
            for k, v in row.items():
                nv = vec.get(k, 0) - mb * v
                if nv:
                    if k not in vec and k in self.rows:
                        heapq.heappush(heap, k)
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            if tag is not None:
                for k, v in self.tags[col].items():
                    nv = tag.get(k, 0) - mb * v
                    if nv:
                        tag[k] = nv
                    else:
                        tag.pop(k, None)
        g = _content(list(vec.values()) + (list(tag.values()) if tag else []))
        if g > 1:
            vec = {k: v // g for k, v in vec.items()}
            if tag is not None:
                tag = {k: v // g for k, v in tag.items()}
            scale /= g
        return vec, tag, scale

    def _reduce_mod(self, vec: dict, tag: dict | None):
        p = self.field.p
        heap = [c for c in vec if c in self.rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            b = vec.get(col)
            if not b or col not in self.rows:
                continue
            for k, v in self.rows[col].items():
                nv = (vec.get(k, 0) - b * v) % p
                if nv:
                    if k not in vec and k in self.rows:
                        heapq.heappush(heap, k)
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            if tag is not None:
                for k, v in self.tags[col].items():
                    nv = (tag.get(k, 0) - b * v) % p
                    if nv:
                        tag[k] = nv
                    else:
                        tag.pop(k, None)
        return vec, tag, 1

    def _reduce_raw(self, vec: Mapping, tag: Mapping | None = None):
        vec = {k: v for k, v in vec.items() if v}
        if tag is not None:
            tag = {k: v for k, v in tag.items() if v}
        if self.field.is_rational:
            vec, s1 = clear_denominators(vec)
            if tag is not None:
                tag = {k: Fraction(v) * s1 for k, v in tag.items()}
                tag, s2 = clear_denominators(tag)
                vec = {k: v * s2 for k, v in vec.items()}
                s1 *= s2
            vec, tag, scale = self._reduce_int(vec, tag)
            return vec, tag, scale * s1
        p = self.field.p
        vec = {k: v % p for k, v in vec.items() if v % p}
        if tag is not None:
            tag = {k: v % p for k, v in tag.items() if v % p}
        return self._reduce_mod(vec, tag)

    def reduce(self, vec: Mapping) -> dict:
        """Exact normal form of ``vec`` modulo the row space."""
        red, _, scale = self._reduce_raw(vec)
        if self.field.is_rational:
            return {k: Fraction(v) / scale for k, v in red.items()}
        return red

    def contains(self, vec: Mapping) -> bool:
        red, _, _ = self._reduce_raw(vec)
        return not red

    def _insert(self, red: dict, tag: dict | None) -> None:
        lead = min(red)
        a = red[lead]
        if self.field.is_rational:
            if a < 0:
                red = {k: -v for k, v in red.items()}
                if tag is not None:
                    tag = {k: -v for k, v in tag.items()}
        else:
            inv = pow(a, -1, self.field.p)
            p = self.field.p
            red = {k: v * inv % p for k, v in red.items()}
            if tag is not None:
                tag = {k: v * inv % p for k, v in tag.items()}
        self.rows[lead] = red
        if tag is not None:
            self.tags[lead] = tag

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when the rank grows."""
        red, _, _ = self._reduce_raw(vec)
        if not red:
            return False
        self._insert(red, None)
        return True

    def add_tracked(self, vec: Mapping, tag: Mapping):
        """Insert ``vec`` with a tag; if it is dependent, return the reduced tag.

        The returned tag is a combination of earlier tags and ``tag`` that
        maps to zero, i.e. a kernel vector (up to a nonzero scalar).
        """
        red, rtag, _ = self._reduce_raw(vec, tag)
        if not red:
            return rtag
        self._insert(red, rtag)
        return None

    def basis(self) -> list:
        """Reduced row echelon basis, leading coefficients 1, sorted by pivot."""
        F = self.field
        out = {}
        for col in sorted(self.rows, reverse=True):
            row = dict(self.rows[col])
            if F.is_rational:
                row = {k: Fraction(v) for k, v in row.items()}
            for other in sorted(out):
                c = row.get(other)
                if c:
                    for k, v in out[other].items():
                        nv = F.norm(row.get(k, 0) - c * v)
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            lc = F.inv(row[col])
            out[col] = {k: F.norm(v * lc) for k, v in row.items()}
        return [out[c] for c in sorted(out)]


def rank(field: Field, rows: Iterable[Mapping]) -> int:
    E = Echelon(field)
    for r in rows:
        E.add(r)
    return E.rank


def kernel(field: Field, images: list) -> list:
    """Basis (reduced echelon, in tag coordinates) of the kernel of the map
    sending basis vector ``j`` to ``images[j]``."""
    E = Echelon(field)
    K = Echelon(field)
    for j, img in enumerate(images):
        dep = E.add_tracked(img, {j: 1})
        if dep is not None:
            K.add(dep)
    return K.basis()
