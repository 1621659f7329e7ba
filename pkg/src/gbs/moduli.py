"""Modular homomorphisms and integral moduli, in exact arithmetic.

Positive rationals are treated as integer vectors over the primes.  The
image of the modular homomorphism is then a lattice ``L``, and the group has a
non-trivial integral modulus exactly when ``L`` meets the non-negative orthant
outside the origin.  That question is decided by a small exact linear
program: maximize the coordinate sum of ``v`` over the real span of ``L``
subject to ``v >= 0`` and ``sum(v) <= 1``.  A rational optimum vector scales
into the lattice itself, so a positive optimum certifies an integral modulus.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sympy import factorint

from .errors import IntegralModuli
from .graph import EdgeIndexedGraph, fundamental_cycles


def exponent_vector(q: Fraction | int) -> dict[int, int]:
    """Prime exponents of ``|q|`` (``q != 0``)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no exponent vector")
    out = dict(factorint(abs(q.numerator)))
    for p, e in factorint(q.denominator).items():
        out[p] = -e
    out.pop(1, None)
    return out


def from_exponents(exps: dict[int, int]) -> Fraction:
    q = Fraction(1)
    for p, e in exps.items():
        q *= Fraction(p) ** e
    return q


@dataclass(frozen=True)
class SignedRational:
    sign: int
    magnitude: tuple  # sorted ((prime, exponent), ...) with non-zero exponents

    @classmethod
    def of(cls, q: Fraction | int) -> SignedRational:
        q = Fraction(q)
        return cls(1 if q > 0 else -1, tuple(sorted(exponent_vector(q).items())))

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self.magnitude)

    @property
    def absolute(self) -> Fraction:
        return from_exponents(self.exponents)

    @property
    def value(self) -> Fraction:
        return self.sign * self.absolute

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class ModuliLattice:
    """Images of a cycle basis under the signed modular homomorphism."""

    generators: tuple[SignedRational, ...]

    @classmethod
    def of(cls, values: Iterable[Fraction | int]) -> ModuliLattice:
        return cls(tuple(SignedRational.of(q) for q in values))

    @cached_property
    def primes(self) -> list[int]:
        return sorted({p for g in self.generators for p, _ in g.magnitude})

    @property
    def unsigned(self) -> list[Fraction]:
        return [g.absolute for g in self.generators]

    @property
    def signed(self) -> list[Fraction]:
        return [g.value for g in self.generators]

    @property
    def orientation(self) -> list[int]:
        return [g.sign for g in self.generators]

    def matrix(self, primes: Sequence[int] | None = None) -> list[list[int]]:
        primes = self.primes if primes is None else primes
        return [[g.exponents.get(p, 0) for p in primes] for g in self.generators]

    def contains(self, q: Fraction | int, signed: bool = False) -> bool:
        """Is ``q`` (or ``|q|`` when unsigned) in the generated subgroup?"""
        target = SignedRational.of(q)
        primes = sorted(set(self.primes) | {p for p, _ in target.magnitude})
        rows = self.matrix(primes)
        vec = [target.exponents.get(p, 0) for p in primes]
        if signed:
            rows = [r + [0 if g.sign > 0 else 1] for r, g in zip(rows, self.generators)]
            rows.append([0] * len(primes) + [2])
            vec.append(0 if target.sign > 0 else 1)
        return lattice_contains(rows, vec)

    def same_group(self, other: ModuliLattice, signed: bool = False) -> bool:
        return all(other.contains(g.value, signed) for g in self.generators) and all(
            self.contains(g.value, signed) for g in other.generators
        )


def modular_group(g: EdgeIndexedGraph, root: str | None = None) -> ModuliLattice:
    """Signed modular value of each fundamental cycle.

    A cycle is read against its stored direction, so ``loop(m, n)`` yields
    ``n/m``; either reading generates the same subgroup.
    """
    values = []
    for cycle in fundamental_cycles(g, root):
        q = Fraction(1)
        for e in cycle:
            q *= Fraction(g.index(e.reverse), g.index(e))
        values.append(q)
    return ModuliLattice.of(values)


# -- integer lattices ---------------------------------------------------------


def hermite_rows(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row echelon basis of the integer row lattice (Hermite style, positive pivots)."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis = []
    for c in range(ncols):
        while True:
            live = [r for r in work if r[c] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: abs(r[c]))
            for r in live:
                if r is not piv:
                    k = r[c] // piv[c]
                    for j in range(c, ncols):
                        r[j] -= k * piv[j]
        live = [r for r in work if r[c] != 0]
        if live:
            piv = live[0]
            work.remove(piv)
            if piv[c] < 0:
                piv = [-x for x in piv]
            for b in basis:
                k = b[c] // piv[c]
                for j in range(c, ncols):
                    b[j] -= k * piv[j]
            basis.append(piv)
        work = [r for r in work if any(r)]
    return basis


def lattice_contains(rows: Iterable[Sequence[int]], target: Sequence[int]) -> bool:
    """Exact test for ``target`` in the integer span of ``rows``."""
    t = list(target)
    for r in hermite_rows(rows):
        c = next(j for j, x in enumerate(r) if x)
        if t[c] % r[c]:
            return False
        k = t[c] // r[c]
        t = [a - k * b for a, b in zip(t, r)]
    return not any(t)


# -- the integral moduli decision ---------------------------------------------


def _simplex_max(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]) -> Fraction:
    """max c.x s.t. A x <= b, x >= 0, for b >= 0 (origin feasible). Bland's rule."""
    m, n = len(A), len(c)
    T = [list(A[i]) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    z = [-x for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            return z[-1]
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(m) if T[i][enter] > 0]
        if not ratios:
            raise ArithmeticError("unbounded linear program")
        _, _, r = min(ratios)
        pr = T[r]
        pv = pr[enter]
        T[r] = pr = [x / pv for x in pr]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], pr)]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, pr)]
        basis[r] = enter


def has_nontrivial_integral_modulus(L: ModuliLattice) -> bool:
    M = L.matrix()
    if not M or not L.primes:
        return False
    k, P = len(M), len(L.primes)
    # variables: x+ (k) then x- (k); v = M^T (x+ - x-)
    col = [[Fraction(M[j][p]) for j in range(k)] for p in range(P)]
    A = [[-a for a in row] + list(row) for row in col]  # -v_p <= 0
    total = [sum(col[p][j] for p in range(P)) for j in range(k)]
    A.append(list(total) + [-t for t in total])  # sum v <= 1
    b = [Fraction(0)] * P + [Fraction(1)]
    c = list(total) + [-t for t in total]
    return _simplex_max(A, b, c) > 0


def integral_coset(r: Fraction | int, L: ModuliLattice, bound: int = 10) -> set[int]:
    """Integers of the form ``|r| q`` with ``q`` in the lattice.

    Searches lattice elements whose coordinates in an echelon basis are at
    most ``bound`` in absolute value.
    """
    if has_nontrivial_integral_modulus(L):
        raise IntegralModuli("r*Q meets the integers in an infinite set")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    r = abs(Fraction(r))
    rexp = exponent_vector(r)
    primes = sorted(set(L.primes) | set(rexp))
    base = [rexp.get(p, 0) for p in primes]
    basis = hermite_rows(L.matrix(primes)) if L.primes else []
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
        v = list(base)
        for cf, row in zip(coeffs, basis):
            if cf:
                v = [a + cf * x for a, x in zip(v, row)]
        if all(x >= 0 for x in v):
            out.add(int(from_exponents(dict(zip(primes, v)))))
    return out
