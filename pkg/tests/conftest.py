import os

import pytest

os.environ.setdefault("CANARD_DATABASE_URL", "sqlite:///:memory:")
os.environ.setdefault("CANARD_LOG_FILE", os.devnull)

from fastapi.testclient import TestClient  # noqa: E402
from sqlalchemy import create_engine  # noqa: E402
from sqlalchemy.orm import sessionmaker  # noqa: E402
from sqlalchemy.pool import StaticPool  # noqa: E402

from core.formal_canard import canard_formal, vdp_series  # noqa: E402
from core.normal_forms import brusselator_normal_form  # noqa: E402
from db.database import base, get_db  # noqa: E402
from model import SeriesCoefficient, ShootRecord  # noqa: E402,F401


@pytest.fixture(scope="session")
def vdp_small():
    return vdp_series(12)


@pytest.fixture(scope="session")
def brusselator_solution():
    return canard_formal(brusselator_normal_form(4))


@pytest.fixture
def db_session():
    engine = create_engine(
        "sqlite:///:memory:", connect_args={"check_same_thread": False}, poolclass=StaticPool
    )
    base.metadata.create_all(bind=engine)
    session = sessionmaker(autoflush=False, autocommit=False, bind=engine)()
    try:
        yield session
    finally:
        session.close()
        base.metadata.drop_all(bind=engine)


@pytest.fixture
def client(db_session):
    from main import app

    def override_get_db():
        yield db_session

    app.dependency_overrides[get_db] = override_get_db
    try:
        yield TestClient(app)
    finally:
        app.dependency_overrides.clear()
