# SPDX-License-Identifier: Apache-2.0
#
# nfisac: near-field sensing and communication simulation library
# Copyright (C) 2026 The nfisac authors
"""Near-field ISAC simulation: channels, beamforming, sensing bounds and power control."""

from ._nfisac import *  # noqa: F401,F403
from ._nfisac import Error, __doc__  # noqa: F401
