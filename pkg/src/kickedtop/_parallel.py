"""Deterministic process fan-out for independent work units.

Results are returned in submission order and every unit is a pure function
of its arguments, so output is identical for any worker count.
"""

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, args_list, workers):
    """Map fn over args_list, optionally across processes; order preserved."""
    args_list = list(args_list)
    if workers is None or workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=min(workers, len(args_list))) as ex:
        return list(ex.map(fn, args_list))
