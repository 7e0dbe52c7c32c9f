import logging

from fastapi import APIRouter, HTTPException, Query, status

from core.errors import CanardError
from core.inner_stokes import DEFAULT_DPS, brusselator_stokes_diff, vdp_stokes_diff
from schema.StokesReport import StokesSample

logger = logging.getLogger(__name__)
router = APIRouter()


def _sample(family: str, compute, x: float, dps: int) -> StokesSample:
    try:
        logger.debug(f"Computing the {family} Stokes difference at X={x}.")
        sample = compute(x, dps)
        logger.info(f"Successfully computed the {family} Stokes difference at X={x}: ratio={sample.ratio:.6f}")
        return sample
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while computing the {family} inner solution at X={x}: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing the inner solution.",
        )


@router.get("/vdp", status_code=status.HTTP_200_OK, response_model=StokesSample)
async def read_vdp_inner(x: float = Query(..., ge=1.0, le=8.0), dps: int = Query(DEFAULT_DPS, ge=15, le=200)):
    return _sample("vdp", vdp_stokes_diff, x, dps)


@router.get("/brusselator", status_code=status.HTTP_200_OK, response_model=StokesSample)
async def read_brusselator_inner(
    x: float = Query(..., ge=1.5, le=8.0), dps: int = Query(DEFAULT_DPS, ge=15, le=200)
):
    return _sample("brusselator", brusselator_stokes_diff, x, dps)
