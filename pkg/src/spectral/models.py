"""Spectral model definitions."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Family = Literal["matern", "exponential", "gaussian", "markov", "nugget"]


class SpectralModel(BaseModel):
    """Unit-range isotropic covariance model of one component.

    Ranges are carried by the anisotropy field, never by the model.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: Family = Field(..., description="Covariance family")
    sill: float = Field(..., gt=0.0, description="Marginal variance")
    nu: float | None = Field(None, gt=0.0, description="Matern smoothness")
    kappa: float | None = Field(None, gt=0.0, description="Markov scale parameter")
    alpha: int | None = Field(None, ge=2, description="Markov polynomial exponent")
    dimension: Literal[2] = Field(default=2, description="Spatial dimension")

    @model_validator(mode="after")
    def check_family_parameters(self) -> "SpectralModel":
        """Require exactly the parameters each family uses."""
        if self.family == "matern" and self.nu is None:
            raise ValueError("matern models need a smoothness 'nu'")
        if self.family != "matern" and self.nu is not None:
            raise ValueError(f"'nu' is not a parameter of the {self.family} family")
        if self.family == "markov" and (self.kappa is None or self.alpha is None):
            raise ValueError("markov models need 'kappa' and 'alpha'")
        markov_only = (self.kappa, self.alpha)
        if self.family != "markov" and any(p is not None for p in markov_only):
            raise ValueError(
                f"'kappa'/'alpha' are not parameters of the {self.family} family"
            )
        return self

    @property
    def smoothness(self) -> float | None:
        """Matern smoothness of the model, if it has one."""
        if self.family == "matern":
            return self.nu
        if self.family == "exponential":
            return 0.5
        if self.family == "markov":
            assert self.alpha is not None
            return self.alpha - self.dimension / 2.0
        return None

    @property
    def is_nugget(self) -> bool:
        return self.family == "nugget"


def matern(sill: float, nu: float) -> SpectralModel:
    return SpectralModel(family="matern", sill=sill, nu=nu)


def exponential(sill: float) -> SpectralModel:
    return SpectralModel(family="exponential", sill=sill)


def gaussian(sill: float) -> SpectralModel:
    return SpectralModel(family="gaussian", sill=sill)


def markov(sill: float, kappa: float, alpha: int = 2) -> SpectralModel:
    return SpectralModel(family="markov", sill=sill, kappa=kappa, alpha=alpha)


def nugget(sill: float) -> SpectralModel:
    return SpectralModel(family="nugget", sill=sill)
