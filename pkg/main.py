import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from db.database import base, engine
from model import SeriesCoefficient, ShootRecord  # noqa: F401  (tables register on base)
from router.Asymptotics import router as asymptotics_router
from router.Inner import router as inner_router
from router.Relief import router as relief_router
from router.Series import router as series_router
from router.Shoot import router as shoot_router
from utility.logging_config import configure_logging

configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI(title="canard-lab", description="Canard series, relief paths, shooting and Stokes diagnostics")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

base.metadata.create_all(bind=engine)
logger.info("Database tables created successfully")

app.include_router(series_router, prefix="/api/series", tags=["Series"])
logger.info("Series router included successfully")

app.include_router(relief_router, prefix="/api/relief", tags=["Relief"])
logger.info("Relief router included successfully")

app.include_router(shoot_router, prefix="/api/shoot", tags=["Shoot"])
logger.info("Shoot router included successfully")

app.include_router(inner_router, prefix="/api/inner", tags=["Inner"])
logger.info("Inner router included successfully")

app.include_router(asymptotics_router, prefix="/api/asymptotics", tags=["Asymptotics"])
logger.info("Asymptotics router included successfully")
