# Copyright 2026 The relframe Authors
# SPDX-License-Identifier: Apache-2.0
"""Coherent-state reference frames, phase twirling and relative observables."""

from ._core import *  # noqa: F401,F403
from ._core import (
    BasisError,
    ConfigError,
    CutoffError,
    DimensionError,
    Error,
    NumericalError,
    PreconditionError,
)

__version__ = "0.1.0"
