"""Shared fixtures and builders for the test suite.

``build_link`` hand-rolls a random link straight from ``Subpath`` objects,
bypassing the scenario module, so engine and covariance tests do not depend
on the drop generator they are not testing.  Its draw order is frozen:
several numeric expectations in the suite were computed against links built
exactly this way, so do not reorder the draws.
"""

import numpy as np
import pytest

from gbscm import Angles, LinkMultipath, Subpath, make_ula

TWO_PI = 2.0 * np.pi


def build_link(rng, n_subpaths, f0=3.0e9, rx_speed=1.0, tx_speed=0.0):
    """Random link with the given endpoint speeds (m/s, isotropic headings).

    Draw order: arrival angles, departure angles, powers (normalized to sum
    to one), delays, initial phases, receive heading, transmit heading.
    """
    th_a = rng.uniform(0.3, 2.8, n_subpaths)
    ph_a = rng.uniform(-np.pi, np.pi, n_subpaths)
    th_d = rng.uniform(0.3, 2.8, n_subpaths)
    ph_d = rng.uniform(-np.pi, np.pi, n_subpaths)
    powers = rng.exponential(1.0, n_subpaths)
    powers /= powers.sum()
    delays = rng.exponential(1e-7, n_subpaths)
    phases = rng.uniform(0.0, TWO_PI, n_subpaths)
    v_rx = rng.normal(size=3)
    v_rx *= rx_speed / np.linalg.norm(v_rx)
    v_tx = rng.normal(size=3)
    v_tx *= tx_speed / np.linalg.norm(v_tx) if tx_speed else 0.0
    subpaths = tuple(
        Subpath(
            power=float(powers[m]),
            delay=float(delays[m]),
            phase=float(phases[m]),
            arrival=Angles(float(th_a[m]), float(ph_a[m])),
            departure=Angles(float(th_d[m]), float(ph_d[m])),
        )
        for m in range(n_subpaths)
    )
    return LinkMultipath(f0=f0, subpaths=subpaths, v_tx=v_tx, v_rx=v_rx)


class ZeroPattern:
    """Element pattern with no response anywhere; silences one pol port."""

    def gain(self, theta, phi):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros_like(theta)
        return float(out) if out.ndim == 0 else out


def rel_frobenius(got, want):
    got = np.asarray(got)
    want = np.asarray(want)
    return float(np.linalg.norm(got - want) / np.linalg.norm(want))


@pytest.fixture(scope="session")
def pedestrian():
    """1 m/s receive walk at 3 GHz: 240 subpaths, 8-element tx / 4-element rx.

    The convergence expectations frozen into the suite were computed on this
    exact link (seed 2026), so keep the construction stable.
    """
    link = build_link(np.random.default_rng(2026), 240)
    tx = make_ula(8, 0.5, link.f0)
    rx = make_ula(4, 0.5, link.f0)
    return link, tx, rx
