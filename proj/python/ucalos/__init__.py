# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The ucalos Authors
"""LoS MIMO between uniform circular arrays."""

from ._ucalos import (
    ArrayConfig,
    Misalignment,
    ModelValidityError,
    NumericalError,
    capacity,
    channel,
    closed_form_svd,
    codebook_angles,
    condition_number,
    design,
    distance_closed_form,
    distance_exact,
    numerical_svd,
    simulate_csv,
    singular_values,
    water_fill,
    zf_rate,
    zf_sic_rate,
)

__all__ = [
    "ArrayConfig",
    "Misalignment",
    "ModelValidityError",
    "NumericalError",
    "capacity",
    "channel",
    "closed_form_svd",
    "codebook_angles",
    "condition_number",
    "design",
    "distance_closed_form",
    "distance_exact",
    "numerical_svd",
    "simulate_csv",
    "singular_values",
    "water_fill",
    "zf_rate",
    "zf_sic_rate",
]
