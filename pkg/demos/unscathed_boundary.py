"""Boundary channels and the unscathed condition.

When some contraction factor |lambda_i| reaches 1, the closed-form route
breaks down. There the adjoint map is a Bayesian inverse exactly for the
states sigma_k-conjugation leaves indistinguishable from the channel
output ("unscathed" states) -- and for a two-entry channel those states
form a single axis of the Bloch ball.
"""

import numpy as np

from qubit_retro import (
    BlochState,
    NoInverse,
    PauliChannel,
    bayesian_inverse,
    is_unscathed,
    unscathed_residuals,
)

np.set_printoptions(precision=6, suppress=True)

# Two nonzero entries {p_0, p_1}: lambda = (1, 2 p_0 - 1, 2 p_0 - 1).
channel = PauliChannel(np.array([0.3, 0.7, 0.0, 0.0]))
print("channel probabilities:", channel.p)
print("contraction factors:  ", channel.lam)
print()

# States on the sigma_1 axis pass the conjugation test.
for r1 in (0.0, 0.5, 1.0):
    state = BlochState(np.array([r1, 0.0, 0.0]))
    k = is_unscathed(channel, state)
    print(f"r = {state.r}: unscathed with sigma_{k}")
print()

# Any state off that axis fails it, for every sigma.
off = BlochState(np.array([0.2, 0.5, 0.1]))
print("off-axis state", off.r)
print("conjugation residuals for sigma_0..sigma_3:", unscathed_residuals(channel, off))
verdict = bayesian_inverse(channel, off)
assert isinstance(verdict, NoInverse)
print("bayesian_inverse verdict:", verdict.reason)
print()

# On the axis the inverse exists and is the channel itself (Pauli channels
# are self-adjoint); off the axis nothing works -- not just the adjoint.
on = BlochState(np.array([0.5, 0.0, 0.0]))
record = bayesian_inverse(channel, on)
print("on-axis inverse residual:", record.residual)
print("unique:", record.unique, "(the channel output is mixed)")

pure = bayesian_inverse(channel, BlochState(np.array([1.0, 0.0, 0.0])))
print("at the pure end of the axis, unique:", pure.unique,
      "(other inverses exist when the output is pure)")
