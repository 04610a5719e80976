"""Robust Integral of the Sign of the Error outer loop."""
import numpy as np

from core.geometry import vec3

SIGN_DEADBAND = 1e-6


def deadband_sign(e, deadband=SIGN_DEADBAND):
    s = np.sign(e)
    s[np.abs(e) < deadband] = 0.0
    return s


def tracking_error(state, sample, gains):
    return (sample.v - state.v) + gains.alpha1 * (sample.p - state.p)


def rise_force(state, sample, gains, rise, dt, m, g=None,
               deadband=SIGN_DEADBAND):
    """Desired force for the translational loop.

    ``sample`` carries the desired position ``p`` and velocity ``v``; an
    optional ``a`` adds the acceleration feed-forward ``m * a``.
    Returns the force and ``rise`` with ``nu`` advanced by one Euler step.
    """
    g = vec3(0.0, 0.0, -9.81) if g is None else np.asarray(g, dtype=float)
    e2 = tracking_error(state, sample, gains)
    gain = gains.k_s + 1.0
    rise.nu = rise.nu + dt * (gain * gains.alpha2 * e2
                              + gains.beta * deadband_sign(e2, deadband))
    force = gain * e2 - gain * rise.e2_initial + rise.nu - m * g
    feed_forward = getattr(sample, 'a', None)
    if feed_forward is not None:
        force = force + m * np.asarray(feed_forward, dtype=float)
    return force, rise


def reanchor(rise, state, sample, gains, nu=None):
    """Restart the error reference after a mode or frame switch."""
    rise.e2_initial = tracking_error(state, sample, gains)
    if nu is not None:
        rise.nu = np.asarray(nu, dtype=float).copy()
    return rise
