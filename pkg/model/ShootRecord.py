from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String, Text

from db.database import base


class ShootRecord(base):
    __tablename__ = "shoot_records"
    __allow_unmapped__ = True

    id = Column(Integer, primary_key=True)
    family = Column(String(32), nullable=False, index=True)
    eps = Column(Float, nullable=False)
    re_parameter = Column(Float, nullable=False)
    im_parameter = Column(Float, nullable=False)
    parameter_text = Column(Text, nullable=False)
    stokes_observable = Column(Float)
    iterations = Column(Integer, nullable=False)
    residual = Column(Float, nullable=False)
    precision_digits = Column(Integer, nullable=False)
    mirrored = Column(Boolean, default=False, nullable=False)
    created_at = Column(DateTime, default=datetime.now)
