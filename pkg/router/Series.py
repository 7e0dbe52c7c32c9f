import logging

import mpmath
from fastapi import APIRouter, HTTPException, Query, status

from core.errors import CanardError
from core.exact_algebra import format_rational
from core.formal_canard import vdp_bn
from core.normal_forms import brusselator_alpha
from crud import SeriesCoefficient as series_service
from db.database import db_dependency
from schema.SeriesCoefficient import BnResponse, SeriesResponse

logger = logging.getLogger(__name__)
router = APIRouter()

MAX_API_ORDER = 200


@router.get("/vdp", status_code=status.HTTP_200_OK, response_model=SeriesResponse)
async def read_vdp_series(db: db_dependency, n: int = Query(..., ge=0, le=MAX_API_ORDER)):
    try:
        logger.debug(f"Fetching Van der Pol coefficients up to n={n}.")
        coefficients = series_service.cached_vdp_coefficients(db, n)
        logger.info(f"Successfully fetched Van der Pol coefficients up to n={n}.")
        return SeriesResponse(family="vdp", a=[format_rational(c) for c in coefficients])
    except HTTPException as http_exc:
        raise http_exc
    except CanardError as e:
        logger.warning(f"Van der Pol series request rejected: {e.message}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while computing the Van der Pol series: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing the Van der Pol series.",
        )


@router.get("/bn", status_code=status.HTTP_200_OK, response_model=BnResponse)
async def read_bn(
    db: db_dependency,
    start: int = Query(1, ge=1),
    stop: int = Query(..., ge=1, le=MAX_API_ORDER),
    digits: int = Query(10, ge=1, le=100),
):
    if stop < start:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail="stop must not be below start")
    try:
        logger.debug(f"Computing b_n for n in [{start}, {stop}].")
        coefficients = series_service.cached_vdp_coefficients(db, stop)
        values = {n: mpmath.nstr(vdp_bn(coefficients, n, digits + 5), digits) for n in range(start, stop + 1)}
        logger.info(f"Successfully computed {len(values)} b_n values.")
        return BnResponse(digits=digits, b=values)
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while computing b_n: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing b_n.",
        )


@router.get("/brusselator", status_code=status.HTTP_200_OK, response_model=SeriesResponse)
async def read_brusselator_series(n: int = Query(..., ge=0, le=40)):
    try:
        logger.debug(f"Computing the Brusselator canard constants through order {n}.")
        alphas = brusselator_alpha(n)
        logger.info(f"Successfully computed {len(alphas)} Brusselator constants.")
        return SeriesResponse(family="brusselator", a=[format_rational(c) for c in alphas])
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while computing the Brusselator series: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while computing the Brusselator series.",
        )
