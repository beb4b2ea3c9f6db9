"""Pair planning, wavelet-regularized image loss and toy splat rendering."""

from pairplan._core import (
    combined_loss,
    complete_pairs,
    dwt2,
    fixture_presets,
    idwt2,
    oneref_pairs,
    plan_gaps,
    render_fixture,
    wavelet_loss,
    wavelet_loss_grad,
    window_pairs,
)

__all__ = [
    "combined_loss",
    "complete_pairs",
    "dwt2",
    "fixture_presets",
    "idwt2",
    "oneref_pairs",
    "plan_gaps",
    "render_fixture",
    "wavelet_loss",
    "wavelet_loss_grad",
    "window_pairs",
]
