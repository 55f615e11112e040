"""Outcome payoffs, expected payoffs and the unsimplified replicator field.

Everything here is computed by brute-force weighting over the eight pure
outcomes, with no algebraic shortcuts. That makes :func:`replicator_field_expanded`
an independent check on the closed-form field in :mod:`scfgame.field`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from scfgame.model import GameParameters, as_triple


class Outcome(NamedTuple):
    improve: bool  # bank upgrades its fintech
    provide: bool  # Enterprise A offers commercial credit
    bank_channel: bool  # Enterprise B finances through the bank


class OutcomePayoff(NamedTuple):
    bank: float
    a: float
    b: float


OUTCOMES = tuple(Outcome(*flags) for flags in product((True, False), repeat=3))


@dataclass(frozen=True)
class PayoffTable:
    entries: dict  # Outcome -> OutcomePayoff

    def __getitem__(self, outcome) -> OutcomePayoff:
        return self.entries[Outcome(*outcome)]

    def __iter__(self):
        return iter(OUTCOMES)

    def __len__(self):
        return len(self.entries)


def _cell(p: GameParameters, o: Outcome) -> OutcomePayoff:
    # Default costs the bank its interest only; principal is not lost.
    interest = p.u * p.m * p.I + (1.0 - p.u) * 0.0
    if o.bank_channel:
        bank = p.R_gf + interest - (p.C_g if o.improve else p.C_gf)
        a = 0.0
        b = p.w * (p.I - p.m * p.I) + (1.0 - p.w) * 0.0
        if not o.improve:
            b -= p.C_bf
    else:
        bank = p.R_gf - p.C_g if o.improve else p.R_gf
        if o.provide:
            a = -p.C_af + (p.v * p.e * p.I + (1.0 - p.v) * 0.0) + p.C_m
            b = p.I - p.C_m - p.e * p.I
        else:
            a = 0.0
            b = 0.0
    return OutcomePayoff(bank, a, b)


def outcome_payoffs(p: GameParameters) -> PayoffTable:
    """Payoffs of bank, A and B for all eight pure outcomes."""
    return PayoffTable({o: _cell(p, o) for o in OUTCOMES})


@dataclass(frozen=True)
class ExpectedPayoffs:
    """Expected payoff of each pure strategy against the current mix.

    ``e11``/``e12``: bank improves / does not; ``e21``/``e22``: A provides /
    does not; ``e31``/``e32``: B picks the bank / picks A. The ``e_bar_*``
    fields are the population averages.
    """

    e11: float
    e12: float
    e_bar_x: float
    e21: float
    e22: float
    e_bar_y: float
    e31: float
    e32: float
    e_bar_z: float


def _weight(flag: bool, prob: float) -> float:
    return prob if flag else 1.0 - prob


def expected_payoffs(p: GameParameters, s) -> ExpectedPayoffs:
    x, y, z = as_triple(s)
    table = outcome_payoffs(p)

    def bank(improve):
        return sum(
            _weight(o.provide, y) * _weight(o.bank_channel, z) * table[o].bank
            for o in OUTCOMES if o.improve == improve
        )

    def a(provide):
        return sum(
            _weight(o.improve, x) * _weight(o.bank_channel, z) * table[o].a
            for o in OUTCOMES if o.provide == provide
        )

    def b(bank_channel):
        return sum(
            _weight(o.improve, x) * _weight(o.provide, y) * table[o].b
            for o in OUTCOMES if o.bank_channel == bank_channel
        )

    e11, e12 = bank(True), bank(False)
    e21, e22 = a(True), a(False)
    e31, e32 = b(True), b(False)
    return ExpectedPayoffs(
        e11, e12, x * e11 + (1.0 - x) * e12,
        e21, e22, y * e21 + (1.0 - y) * e22,
        e31, e32, z * e31 + (1.0 - z) * e32,
    )


def replicator_field_expanded(p: GameParameters, s):
    """Velocity as ``x(E11 - Ex)``, ``y(E21 - Ey)``, ``z(E31 - Ez)``, unsimplified."""
    from scfgame.field import Velocity

    x, y, z = as_triple(s)
    ep = expected_payoffs(p, (x, y, z))
    return Velocity(
        x * (ep.e11 - ep.e_bar_x),
        y * (ep.e21 - ep.e_bar_y),
        z * (ep.e31 - ep.e_bar_z),
    )
