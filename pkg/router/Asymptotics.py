import logging

from fastapi import APIRouter, HTTPException, Query, status

from core.asymptotics import DEFAULT_FIT_RANGE, fit_bn, probe_brusselator_constant
from core.errors import CanardError
from core.formal_canard import vdp_bn
from core.normal_forms import brusselator_alpha
from crud import SeriesCoefficient as series_service
from db.database import db_dependency
from model.FitModelEnum import FitModelEnum
from schema.FitResult import FitResult, ProbeReport

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/fit", status_code=status.HTTP_200_OK, response_model=FitResult)
async def read_fit(
    db: db_dependency,
    model: FitModelEnum = Query(FitModelEnum.inv_sqrt_n),
    start: int = Query(DEFAULT_FIT_RANGE[0], ge=1),
    stop: int = Query(DEFAULT_FIT_RANGE[1], le=200),
):
    try:
        logger.debug(f"Fitting b_n on [{start}, {stop}] with the {model.value} model.")
        coefficients = series_service.cached_vdp_coefficients(db, stop)
        points = [(n, float(vdp_bn(coefficients, n, 20))) for n in range(start, stop + 1)]
        result = fit_bn(points, model)
        logger.info(f"Successfully fitted b_n: C={result.C:.10f}")
        return result
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while fitting b_n: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while fitting b_n.",
        )


@router.get("/probe-brusselator", status_code=status.HTTP_200_OK, response_model=ProbeReport)
async def read_brusselator_probe(n: int = Query(30, ge=4, le=40), levels: int = Query(2, ge=0, le=4)):
    try:
        a = (1, *brusselator_alpha(n - 1))
        return probe_brusselator_constant(a, levels)
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while probing the Brusselator constant: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while probing the Brusselator constant.",
        )
