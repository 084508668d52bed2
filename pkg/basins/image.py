import numpy as np
import pandas as pd

from dynamics import TpiStatus
from utils.colors import basin_palette, UNRESOLVED_RGB, MAP_UNDEFINED_RGB, BACKGROUND_RGB, MARKER_RGB
from utils.exception_handler import InvalidInputError
from .rasterize import ParametrizationKind, generator_angles


RENDER_STRIP = 'strip'
RENDER_DISK = 'disk'

_DISK_INNER_RADIUS = 0.5
_MARKER_HALF_WIDTH = 1


def label_colors(labels, palette_size):
    """
    RGB triple (uint8) of every basin label: palette colors for labels >= 0, black for Unresolved, white for
    MapUndefined.
    """
    table = np.array(
        list(basin_palette(palette_size)) + [MAP_UNDEFINED_RGB, UNRESOLVED_RGB], dtype=np.uint8
    ).reshape(-1, 3)
    # Unresolved (-1) and MapUndefined (-2) index the last two rows
    return table[np.asarray(labels)]


def _disk_cells(resolution):
    """
    For a resolution x resolution render of the annulus 0.5 <= r <= 1: the circle cell of each pixel (nearest angle)
    and the mask of the pixels inside the annulus.
    """
    centers = (np.arange(resolution) + 0.5) / resolution * 2. - 1.
    x = centers[None, :]
    y = -centers[:, None]
    r = np.hypot(x, y)
    angle = np.mod(np.arctan2(y, x), 2. * np.pi)
    cells = np.mod(np.floor(angle / (2. * np.pi) * resolution + 0.5).astype(int), resolution)
    inside = (r >= _DISK_INNER_RADIUS) & (r <= 1.)
    return cells, inside


def _mark(image, row, col):
    h, w, _ = image.shape
    for i in range(row - _MARKER_HALF_WIDTH, row + _MARKER_HALF_WIDTH + 1):
        for j in range(col - _MARKER_HALF_WIDTH, col + _MARKER_HALF_WIDTH + 1):
            if 0 <= i < h:
                image[i, j % w] = MARKER_RGB


def render(basin_map, mode=RENDER_DISK, mark_generators=False):
    """
    RGB raster of a basin map: for the circle a 1 x R strip or an R x R annulus colored by angle on a gray
    background; for the sphere a res_theta x res_phi equirectangular image.
    :param mark_generators: overlay small markers at the positions of +-v_k (disk and sphere only)
    :return: uint8 array of shape (height, width, 3)
    """
    parametrization = basin_map.parametrization
    palette_size = 2 * len(basin_map.structure.pairs)
    colors = label_colors(basin_map.limit_index, palette_size)

    if parametrization.kind is ParametrizationKind.SPHERE:
        image = colors.reshape(parametrization.shape + (3, )).copy()
        if mark_generators:
            res_theta, res_phi = parametrization.shape
            for theta, phi in generator_angles(basin_map):
                row = min(int(theta / np.pi * res_theta), res_theta - 1)
                col = int(round(phi / (2. * np.pi) * res_phi)) % res_phi
                _mark(image, row, col)
        return image

    resolution = parametrization.res_theta
    if mode == RENDER_STRIP:
        return colors.reshape(1, resolution, 3).copy()
    elif mode != RENDER_DISK:
        raise InvalidInputError(f'render mode must be {RENDER_STRIP!r} or {RENDER_DISK!r}; got mode={mode!r}')
    cells, inside = _disk_cells(resolution)
    image = np.empty((resolution, resolution, 3), dtype=np.uint8)
    image[...] = BACKGROUND_RGB
    image[inside] = colors[cells[inside]]
    if mark_generators:
        radius = (1. + _DISK_INNER_RADIUS) / 2
        for theta in generator_angles(basin_map):
            col = int((radius * np.cos(theta) + 1.) / 2. * resolution)
            row = int((1. - radius * np.sin(theta)) / 2. * resolution)
            _mark(image, min(row, resolution - 1), min(col, resolution - 1))
    return image


def write_ppm(image, path):
    image = np.asarray(image, dtype=np.uint8)
    height, width, _ = image.shape
    with open(path, 'wb') as f:
        f.write(f'P6\n{width} {height}\n255\n'.encode('ascii'))
        f.write(image.tobytes())


def read_ppm(path):
    """
    Reads a binary PPM (P6) image with maxval 255.
    :return: uint8 array of shape (height, width, 3)
    """
    with open(path, 'rb') as f:
        magic = f.readline().decode('ascii').strip()
        if magic != 'P6':
            raise InvalidInputError(f'expected a P6 image; got magic number {magic!r}')
        width, height = map(int, f.readline().decode('ascii').split())
        maxval = int(f.readline().decode('ascii').strip())
        if maxval != 255:
            raise InvalidInputError(f'expected maxval 255; got {maxval}')
        data = f.read()
    return np.frombuffer(data, dtype=np.uint8).reshape(height, width, 3)


def write_image(basin_map, path, mode=RENDER_DISK, mark_generators=False):
    write_ppm(render(basin_map, mode=mode, mark_generators=mark_generators), path)


def basin_table(basin_map):
    """
    :return: pandas.DataFrame with the columns index, coord1, coord2 (sphere only), limit_index, iterations, status
    """
    data = basin_map.data
    columns = {'index': data['cell'].values, 'coord1': data['theta'].values}
    if basin_map.parametrization.kind is ParametrizationKind.SPHERE:
        columns['coord2'] = data['phi'].values
    columns['limit_index'] = basin_map.limit_index
    columns['iterations'] = basin_map.iterations
    columns['status'] = [TpiStatus(int(s)).name.lower() for s in basin_map.status]
    return pd.DataFrame(columns)


def write_csv(basin_map, path):
    basin_table(basin_map).to_csv(path, index=False, float_format='%.17g')
