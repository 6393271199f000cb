"""Grid triangulation and anisotropy fields."""

from .anisotropy import (
    AnisotropyField,
    MetricSample,
    centroid_metric,
    constant_field,
    interpolate_to_centroids,
    metric_at,
)
from .mesh import (
    ElementGeometry,
    TriMesh,
    element_geometries,
    element_geometry,
    point_grid,
    triangulate_grid,
)
from .scenes import cross_field, vortex_field

__all__ = [
    "AnisotropyField",
    "ElementGeometry",
    "MetricSample",
    "TriMesh",
    "centroid_metric",
    "constant_field",
    "cross_field",
    "element_geometries",
    "element_geometry",
    "interpolate_to_centroids",
    "metric_at",
    "point_grid",
    "triangulate_grid",
    "vortex_field",
]
