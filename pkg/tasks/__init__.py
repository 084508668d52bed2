import pathlib
import importlib.resources


CACHE_DIR = pathlib.PurePath(importlib.resources.files('tasks') / 'cache')


from .request_manager import (
    set_cache_dir,
    enable_cache,
    cache_dir,
    Request,
    EnumerateRequest,
    ClassifyRequest,
    OracleRequest,
    RasterizeRequest,
    request_from_dict,
    request_from_json,
)
