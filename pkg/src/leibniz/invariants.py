"""Basis-independent profiles and one-sided non-isomorphism certificates."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from typing import Union

from .algebra import Algebra, is_lie
from .derivations import derivation_space
from .structure import derived_series, generator_count, lower_central_series, right_annihilator, series_dims

__all__ = ["InvariantProfile", "NonIsomorphic", "Inconclusive", "profile", "distinguish"]


@dataclass(frozen=True)
class InvariantProfile:
    """Isomorphism invariants; field order is the order of comparison."""

    dim: int
    lcs_dims: tuple[int, ...]
    derived_dims: tuple[int, ...]
    ann_r_dim: int
    der_dim: int
    generators: int
    lie_flag: bool

    def __str__(self) -> str:
        return ", ".join(f"{f.name}={_fmt(getattr(self, f.name))}" for f in fields(self))


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(map(str, value)) + ")"
    return str(value).lower() if isinstance(value, bool) else str(value)


@dataclass(frozen=True)
class NonIsomorphic:
    field: str
    left: object
    right: object

    def __str__(self) -> str:
        return f"NonIsomorphic({self.field}: {_fmt(self.left)} vs {_fmt(self.right)})"


@dataclass(frozen=True)
class Inconclusive:
    def __str__(self) -> str:
        return "Inconclusive"


Certificate = Union[NonIsomorphic, Inconclusive]


def profile(A: Algebra) -> InvariantProfile:
    """Profile of a rational algebra.

    ``generators`` is ``dim L - dim [L, L]``, the minimal number of
    generators when ``A`` is nilpotent.
    """
    A.require_rational()
    return InvariantProfile(
        dim=A.dim,
        lcs_dims=series_dims(lower_central_series(A)),
        derived_dims=series_dims(derived_series(A)),
        ann_r_dim=right_annihilator(A).dim,
        der_dim=derivation_space(A).dim,
        generators=generator_count(A),
        lie_flag=is_lie(A),
    )


def distinguish(A: Algebra | InvariantProfile, B: Algebra | InvariantProfile) -> Certificate:
    """The first differing profile field, or :class:`Inconclusive`.

    Never claims isomorphism: equal profiles only mean these invariants
    cannot tell the algebras apart.
    """
    pa = A if isinstance(A, InvariantProfile) else profile(A)
    pb = B if isinstance(B, InvariantProfile) else profile(B)
    for f, a, b in zip(fields(InvariantProfile), astuple(pa), astuple(pb)):
        if a != b:
            return NonIsomorphic(f.name, a, b)
    return Inconclusive()
