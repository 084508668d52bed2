import shutil
import pathlib
import sys

import tasks


def clear_cache(cache_dir=None):
    """
    Removes the on-disk request cache under cache_dir (tasks.CACHE_DIR by default).
    """
    cache_dir = pathlib.Path(cache_dir) if cache_dir is not None else pathlib.Path(tasks.CACHE_DIR)
    # closes a cache opened by this process; it is reopened lazily on the next request
    tasks.set_cache_dir(cache_dir)
    if (cache_dir / 'cache.tmp').exists():
        shutil.rmtree(cache_dir / 'cache.tmp')


if __name__ == '__main__':
    clear_cache(sys.argv[1] if len(sys.argv) > 1 else None)
