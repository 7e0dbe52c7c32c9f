"""series cache and shoot records

Revision ID: 0001
Revises:
Create Date: 2026-10-17 09:00:00

"""
from typing import Sequence, Union

from alembic import op
import sqlalchemy as sa

revision: str = "0001"
down_revision: Union[str, None] = None
branch_labels: Union[str, Sequence[str], None] = None
depends_on: Union[str, Sequence[str], None] = None


def upgrade() -> None:
    op.create_table(
        "series_coefficients",
        sa.Column("id", sa.Integer(), primary_key=True),
        sa.Column("family", sa.String(length=32), nullable=False),
        sa.Column("n", sa.Integer(), nullable=False),
        sa.Column("value", sa.Text(), nullable=False),
        sa.UniqueConstraint("family", "n", name="uq_series_family_n"),
    )
    op.create_index("ix_series_coefficients_family", "series_coefficients", ["family"])
    op.create_table(
        "shoot_records",
        sa.Column("id", sa.Integer(), primary_key=True),
        sa.Column("family", sa.String(length=32), nullable=False),
        sa.Column("eps", sa.Float(), nullable=False),
        sa.Column("re_parameter", sa.Float(), nullable=False),
        sa.Column("im_parameter", sa.Float(), nullable=False),
        sa.Column("parameter_text", sa.Text(), nullable=False),
        sa.Column("stokes_observable", sa.Float(), nullable=True),
        sa.Column("iterations", sa.Integer(), nullable=False),
        sa.Column("residual", sa.Float(), nullable=False),
        sa.Column("precision_digits", sa.Integer(), nullable=False),
        sa.Column("mirrored", sa.Boolean(), nullable=False),
        sa.Column("created_at", sa.DateTime(), nullable=True),
    )
    op.create_index("ix_shoot_records_family", "shoot_records", ["family"])


def downgrade() -> None:
    op.drop_index("ix_shoot_records_family", table_name="shoot_records")
    op.drop_table("shoot_records")
    op.drop_index("ix_series_coefficients_family", table_name="series_coefficients")
    op.drop_table("series_coefficients")
