import functools
import plotly.colors


UNRESOLVED_RGB = (0, 0, 0)
MAP_UNDEFINED_RGB = (255, 255, 255)
BACKGROUND_RGB = (128, 128, 128)
MARKER_RGB = (0, 0, 160)

_SHADE_FACTOR = 0.6


def rgb_to_tuple(rgb):
    rgb_tuple = None
    if isinstance(rgb, tuple):
        rgb_tuple = rgb
    elif isinstance(rgb, str):
        if rgb.startswith('rgb(') and rgb.endswith(')'):
            rgb_tuple = plotly.colors.unlabel_rgb(rgb)
        elif rgb.startswith('#'):
            rgb_tuple = plotly.colors.hex_to_rgb(rgb)

    if rgb_tuple is None:
        raise ValueError(f'invalid format of rgb; must be a tuple of 3 ints, a string rgb(R, G, B) or hex; got {rgb}')
    return tuple(int(round(c)) for c in rgb_tuple)


@functools.lru_cache()
def _base_hues():
    # the cyclical scale repeats its first colour at the end
    hues = []
    for color in plotly.colors.cyclical.HSV:
        rgb = rgb_to_tuple(color)
        if rgb not in hues:
            hues.append(rgb)
    return tuple(hues)


@functools.lru_cache()
def basin_palette(size):
    """
    Fixed HSV-derived palette: the distinct hues of plotly's cyclical HSV scale, followed by successively darker
    shades of the same hues when more colours are needed.
    :param size: number of colours
    :return: tuple of (r, g, b) triples of ints
    """
    hues = _base_hues()
    palette = []
    shade = 1.
    while len(palette) < size:
        for r, g, b in hues:
            if len(palette) == size:
                break
            palette.append((int(r * shade), int(g * shade), int(b * shade)))
        shade *= _SHADE_FACTOR
    return tuple(palette)
