from sqlalchemy import Column, Integer, String, Text, UniqueConstraint

from db.database import base


class SeriesCoefficient(base):
    __tablename__ = "series_coefficients"
    __allow_unmapped__ = True
    __table_args__ = (UniqueConstraint("family", "n", name="uq_series_family_n"),)

    id = Column(Integer, primary_key=True)
    family = Column(String(32), nullable=False, index=True)  # vdp / brusselator
    n = Column(Integer, nullable=False)
    value = Column(Text, nullable=False)  # exact "num/den"
