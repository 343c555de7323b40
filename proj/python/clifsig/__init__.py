# SPDX-License-Identifier: Apache-2.0
"""G3 geometric-algebra analytic signals.

Fields are numpy arrays in (rows, cols) order. Multivector results carry a
trailing axis of 8 blade coefficients indexed by bitmask (1 = e1, 2 = e2,
3 = e12, 4 = e3, 5 = e13, 6 = e23, 7 = e123).
"""

from ._clifsig import (
    ClifsigError,
    Multiplier,
    analytic_signal,
    classical_1d,
    decompose,
    extended_hilbert,
    load_archive,
    load_image,
    multiplier,
    multiplier_names,
    partial_transforms,
    reconstruct_from_orientation,
    remove_exceptional,
    selftest,
)

__all__ = [
    "ClifsigError",
    "Multiplier",
    "analytic_signal",
    "classical_1d",
    "decompose",
    "extended_hilbert",
    "load_archive",
    "load_image",
    "multiplier",
    "multiplier_names",
    "partial_transforms",
    "reconstruct_from_orientation",
    "remove_exceptional",
    "selftest",
]
