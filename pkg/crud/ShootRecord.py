import logging

from fastapi import HTTPException, status
from sqlalchemy.orm import Session

from model.ShootRecord import ShootRecord
from schema.ShootResult import ShootRecordOutput, ShootResult

logger = logging.getLogger(__name__)


def create_shoot_record(db: Session, result: ShootResult) -> ShootRecordOutput:
    try:
        logger.debug(f"Attempting to record a {result.family} shoot at eps={result.eps}.")
        record = ShootRecord(**result.model_dump())
        db.add(record)
        db.commit()
        db.refresh(record)
        logger.info(f"Successfully recorded shoot {record.id}.")
        return ShootRecordOutput.model_validate(record)
    except Exception as e:
        db.rollback()
        logger.error(f"Error occurred while recording a shoot result: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while recording the shoot result.",
        )


def list_shoot_records(db: Session, family: str | None = None) -> list[ShootRecordOutput]:
    try:
        logger.debug(f"Fetching shoot records for family={family}.")
        query = db.query(ShootRecord)
        if family is not None:
            query = query.filter(ShootRecord.family == family)
        records = query.order_by(ShootRecord.eps.desc(), ShootRecord.id.asc()).all()
        logger.info(f"Successfully fetched {len(records)} shoot records.")
        return [ShootRecordOutput.model_validate(record) for record in records]
    except Exception as e:
        logger.error(f"Error occurred while fetching shoot records: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while fetching shoot records.",
        )


def get_shoot_record_by_id(db: Session, id: int) -> ShootRecordOutput:
    try:
        logger.debug(f"Fetching shoot record with ID: {id}.")
        record = db.query(ShootRecord).filter(ShootRecord.id == id).first()
        if not record:
            logger.warning(f"Shoot record with ID {id} not found.")
            raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Shoot record not found.")
        return ShootRecordOutput.model_validate(record)
    except HTTPException as http_exc:
        raise http_exc
    except Exception as e:
        logger.error(f"Error occurred while fetching shoot record {id}: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="An error occurred while fetching the shoot record.",
        )
