import logging
from typing import Optional

from fastapi import APIRouter, HTTPException, Query, status

from core.errors import CanardError
from core.shooter import find_brusselator_a, find_vdp_alpha
from crud import ShootRecord as shoot_record_service
from db.database import db_dependency
from schema.ShootResult import ShootConfig, ShootRecordOutput

logger = logging.getLogger(__name__)
router = APIRouter()

_FINDERS = {"vdp": find_vdp_alpha, "brusselator": find_brusselator_a}


def _shoot_and_record(db, family: str, eps: float, config: ShootConfig) -> ShootRecordOutput:
    try:
        logger.debug(f"Attempting a {family} shoot at eps={eps}.")
        result = _FINDERS[family](eps, config)
        record = shoot_record_service.create_shoot_record(db, result)
        logger.info(f"Successfully shot {family} at eps={eps}.")
        return record
    except HTTPException as http_exc:
        raise http_exc
    except CanardError as e:
        logger.warning(f"{family} shoot at eps={eps} failed: {e.message}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.to_record())
    except Exception as e:
        logger.error(f"Error occurred while shooting {family} at eps={eps}: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while shooting.",
        )


@router.post("/vdp", status_code=status.HTTP_201_CREATED, response_model=ShootRecordOutput)
def shoot_vdp(db: db_dependency, config: ShootConfig, eps: float = Query(..., gt=0, le=0.5)):
    return _shoot_and_record(db, "vdp", eps, config)


@router.post("/brusselator", status_code=status.HTTP_201_CREATED, response_model=ShootRecordOutput)
def shoot_brusselator(db: db_dependency, config: ShootConfig, eps: float = Query(..., gt=0, le=0.5)):
    return _shoot_and_record(db, "brusselator", eps, config)


@router.get("/records", status_code=status.HTTP_200_OK, response_model=list[ShootRecordOutput])
async def read_shoot_records(db: db_dependency, family: Optional[str] = Query(None)):
    return shoot_record_service.list_shoot_records(db, family)


@router.get("/records/{record_id}", status_code=status.HTTP_200_OK, response_model=ShootRecordOutput)
async def read_shoot_record(db: db_dependency, record_id: int):
    return shoot_record_service.get_shoot_record_by_id(db, record_id)
