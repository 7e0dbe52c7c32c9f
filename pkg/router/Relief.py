import logging

from fastapi import APIRouter, HTTPException, Query, status

from core.errors import CanardError
from core.relief import ComplexPath, descent_check, relief_spec_by_name, relief_value
from schema.DescentCertificate import DescentCertificateSchema, PathRequest, ReliefValue

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("/check", status_code=status.HTTP_200_OK, response_model=DescentCertificateSchema)
async def check_path(request: PathRequest):
    try:
        logger.debug(f"Checking a {len(request.points_re)}-vertex path on the {request.spec} relief.")
        spec = relief_spec_by_name(request.spec, request.theta)
        path = ComplexPath.through(*request.points, samples_per_segment=request.samples_per_segment)
        certificate = descent_check(spec, path)
        logger.info(f"Successfully checked the path: C={certificate.C:.3e}")
        return DescentCertificateSchema.from_certificate(certificate)
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while checking a path: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while checking the path.",
        )


@router.get("/value", status_code=status.HTTP_200_OK, response_model=ReliefValue)
async def read_relief_value(spec: str = Query("vdp"), re: float = Query(...), im: float = Query(0.0)):
    try:
        relief = relief_spec_by_name(spec)
        value = float(relief_value(relief, complex(re, im)))
        return ReliefValue(spec=spec, re=re, im=im, value=value)
    except CanardError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while evaluating the relief: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while evaluating the relief.",
        )
