"""Factorial kriging and simulation with matrix-free covariance operators."""

from .components import (
    ComponentModel,
    FemSpectralComponent,
    NuggetComponent,
    apply_component,
    build_component,
)
from .problem import FilterProblem, FilterResult
from .simulation import (
    SyntheticScene,
    build_scene,
    make_synthetic,
    random_generator,
    simulate,
    white_noise,
)
from .solver import component_estimate, filter, noise_estimate, system_operator

__all__ = [
    "ComponentModel",
    "FemSpectralComponent",
    "FilterProblem",
    "FilterResult",
    "NuggetComponent",
    "SyntheticScene",
    "apply_component",
    "build_component",
    "build_scene",
    "component_estimate",
    "filter",
    "make_synthetic",
    "noise_estimate",
    "random_generator",
    "simulate",
    "system_operator",
    "white_noise",
]
