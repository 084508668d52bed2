from .rasterize import (
    BASIN_DIMENSIONS,
    ParametrizationKind,
    Parametrization,
    BasinMap,
    circle,
    sphere,
    circle_angles,
    sphere_angles,
    circle_starts,
    sphere_starts,
    rasterize,
    generator_angles,
)
from .image import (
    RENDER_STRIP,
    RENDER_DISK,
    label_colors,
    render,
    write_ppm,
    read_ppm,
    write_image,
    basin_table,
    write_csv,
)
