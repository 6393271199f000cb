"""Matrix-free geostatistical filtering with non-stationary random fields."""

__version__ = "0.1.0"
