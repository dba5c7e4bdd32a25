# -*- coding: utf-8 -*-
import matplotlib.pyplot as plt
import numpy as np

from gupqm.model.algebra.uncertainty import bound_curve, minimal_length
from gupqm.model.kernels.propagator import propagator
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Sequence


def bound_region(alpha: float, hbar: float, dP_grid: Sequence[float]):
    """
    Allowed region of the one-dimensional GUP: the boundary dQ(dP), shaded
    above, with the HUP hyperbola and the minimal length for reference.
    """

    fig = plt.figure(figsize=(8, 6))
    ax = fig.subplots()

    dP, dQ = np.array(bound_curve(alpha, hbar, dP_grid)).T
    ax.plot(dP, dQ, 'b', label='GUP')
    ax.fill_between(dP, dQ, dQ.max(), color='b', alpha=.1)
    ax.plot(dP, hbar / (2 * dP), 'k--', label='HUP')

    length, spread = minimal_length(alpha, hbar)
    if spread is not None:
        ax.axhline(length, color='r', linestyle=':', label='minimal length')
        ax.plot([spread], [length], 'ro')

    ax.set(title='Allowed region', xlabel=r'$\Delta P$', ylabel=r'$\Delta Q$')
    ax.grid()
    ax.legend()
    return fig


def kernel_profile(
        params: ModelParams,
        q0: Sequence[float],
        qf_grid: Sequence[float],
        time: complex
):
    """
    Modulus and phase of the kernel along the first axis of the final point,
    the other components of qf being those of q0. The alpha = 0 kernel is
    drawn dashed.
    """

    q0 = np.asarray(q0, dtype=float)
    points = np.tile(q0, (len(qf_grid), 1))
    points[:, 0] = qf_grid

    fig = plt.figure(figsize=(10, 8))
    modulus, phase = fig.subplots(2, 1, sharex=True)

    for p, style in ((params, 'b'), (params.replace(alpha=0), 'k--')):
        values = propagator(p).amplitude(points, q0, time)
        label = rf'$\alpha$ = {p.alpha:g}'
        modulus.plot(qf_grid, np.abs(values), style, label=label)
        phase.plot(qf_grid, np.angle(values), style, label=label)

    modulus.set(title='Kernel profile', ylabel='|K|')
    phase.set(xlabel=r'$q_f$', ylabel='arg K')
    for ax in (modulus, phase):
        ax.grid()
        ax.legend()
    return fig
