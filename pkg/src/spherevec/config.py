"""Tunable policies, kept in one place so scripts and the CLI agree."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SamplingConfig:
    """Distribution of random test objects: integer coefficients in
    [-coeff_bound, coeff_bound] and monomials of total degree <= max_degree."""

    coeff_bound: int = 3
    max_degree: int = 4
    max_terms: int = 3
    max_m: int = 3
    alpha_bound: int = 4
    max_z_pole: int = 2


@dataclass(frozen=True)
class CertifyConfig:
    """Window enlargement policy for labelling a closure Bounded."""

    step: int = 2
    enlargements: int = 2
    cap: int = 20000
    default_D: int = 6
    margin: int = 2


DEFAULT_SAMPLING = SamplingConfig()
DEFAULT_CERTIFY = CertifyConfig()
