"""Independent jobs of a sweep, run in a process pool or sequentially.

Workers are module-level functions so they pickle; they take and return plain
data so each job is isolated from the others.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from core.inner_stokes import brusselator_stokes_diff, vdp_stokes_diff
from core.shooter import find_brusselator_a, find_vdp_alpha
from schema.ShootResult import ShootConfig, ShootResult
from schema.StokesReport import StokesSample

logger = logging.getLogger(__name__)


def shoot_job(family: str, eps: float, config: dict) -> ShootResult:
    finder = find_vdp_alpha if family == "vdp" else find_brusselator_a
    return finder(eps, ShootConfig(**config))


def inner_job(family: str, x: float, dps: int) -> StokesSample:
    compute = vdp_stokes_diff if family == "vdp" else brusselator_stokes_diff
    return compute(x, dps)


def run_sweep(worker: Callable, arguments: Sequence[tuple], jobs: int = 1) -> list:
    """worker(*args) for every tuple, results in input order."""
    logger.debug(f"Attempting a sweep of {len(arguments)} {worker.__name__} jobs on {jobs} workers")
    if jobs <= 1 or len(arguments) <= 1:
        results = [worker(*args) for args in arguments]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(arguments))) as pool:
            futures = [pool.submit(worker, *args) for args in arguments]
            results = [future.result() for future in futures]
    logger.info(f"Successfully finished {len(results)} {worker.__name__} jobs")
    return results
