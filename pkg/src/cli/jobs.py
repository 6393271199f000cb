"""Turn validated job files into meshes, components and filtering problems."""

import math

import numpy as np

from src.errors import InvalidArgumentError
from src.geometry import (
    AnisotropyField,
    TriMesh,
    constant_field,
    cross_field,
    triangulate_grid,
    vortex_field,
)
from src.krige import ComponentModel, FilterProblem, build_component
from src.models.config import ToolkitConfig
from src.models.jobs import AnisotropySpec, ComponentSpec, GridSpec, JobConfig
from src.raster import GridHeader, read_grid


def mesh_for(grid: GridSpec) -> TriMesh:
    return triangulate_grid(grid.nx, grid.ny, grid.dx, grid.dy)


def header_for(grid: GridSpec) -> GridHeader:
    return GridHeader(nx=grid.nx, ny=grid.ny, dx=grid.dx, dy=grid.dy)


def check_grid(header: GridHeader, grid: GridSpec, what: str) -> None:
    """Raise if a raster does not have the job's grid dimensions."""
    if (header.nx, header.ny) != (grid.nx, grid.ny):
        raise InvalidArgumentError(
            f"{what} is {header.nx}x{header.ny}, job grid is {grid.nx}x{grid.ny}"
        )


def anisotropy_for(
    spec: AnisotropySpec, grid: GridSpec, mesh: TriMesh
) -> AnisotropyField:
    """Build the per-node anisotropy field described by ``spec``.

    Raises:
        InvalidArgumentError: If a raster does not match the grid
    """
    if spec.mode == "rasters":
        values = []
        for path in (spec.theta_path, spec.rho1_path, spec.rho2_path):
            assert path is not None
            header, data = read_grid(path)
            check_grid(header, grid, f"raster {path}")
            values.append(data)
        return AnisotropyField(theta=values[0], rho1=values[1], rho2=values[2])

    assert spec.rho1 is not None and spec.rho2 is not None
    if spec.mode == "constant":
        assert spec.theta is not None
        return constant_field(mesh, spec.theta, spec.rho1, spec.rho2)
    layout = vortex_field if spec.mode == "vortex" else cross_field
    return layout(mesh, spec.rho1, spec.rho2, spec.center)


def component_names(job: JobConfig) -> list[str]:
    names = [job.signal.name or "signal"]
    names += [spec.name or f"noise-{k}" for k, spec in enumerate(job.noises, start=1)]
    return names


def build_components(
    job: JobConfig,
    mesh: TriMesh,
    config: ToolkitConfig,
    grid: GridSpec | None = None,
    with_sqrt: bool = False,
    degree: int | None = None,
    fit_tolerance: float | None = None,
) -> list[ComponentModel]:
    """Prepare the signal followed by every noise component of ``job``."""
    grid = grid or job.grid
    solver = config.solver
    options: dict[str, object] = {
        "degree": degree if degree is not None else job.solver.degree,
        "fit_tolerance": fit_tolerance or solver.fit_tolerance,
        "max_degree": max(solver.max_degree, solver.degree),
        "interval_end": job.solver.interval_end,
        "with_sqrt": with_sqrt,
        "threads": solver.threads,
    }
    components = []
    for spec, name in zip(job.components, component_names(job), strict=True):
        components.append(_build(spec, name, grid, mesh, options))
    return components


def _build(
    spec: ComponentSpec,
    name: str,
    grid: GridSpec,
    mesh: TriMesh,
    options: dict[str, object],
) -> ComponentModel:
    if spec.model.is_nugget:
        return build_component(spec.model, mesh, name=name)
    assert spec.anisotropy is not None
    aniso = anisotropy_for(spec.anisotropy, grid, mesh)
    return build_component(spec.model, mesh, aniso, name, **options)


def filter_problem(
    job: JobConfig,
    data: np.ndarray,
    components: list[ComponentModel],
    config: ToolkitConfig,
    tol: float | None = None,
) -> FilterProblem:
    """Assemble a FilterProblem, falling back to config.yaml for unset solver fields."""
    max_iter = job.solver.max_iter
    if max_iter is None:
        max_iter = math.ceil(config.solver.max_iter_factor * math.sqrt(data.size))
    return FilterProblem(
        data=data,
        signal=components[0],
        noises=components[1:],
        tol=tol or job.solver.tol or config.solver.tol,
        max_iter=max_iter,
        jitter=job.solver.jitter,
        jitter_scale=config.solver.jitter_scale,
    )


def close_all(components: list[ComponentModel]) -> None:
    for component in components:
        component.close()
