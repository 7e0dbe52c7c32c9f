from typing import Annotated

from fastapi import Depends
from sqlalchemy import create_engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from core.config import get_settings


def get_db():
    db = sessionLocal()
    try:
        yield db
    finally:
        db.close()


database_url = get_settings().database_url
# sqlite connections are shared between the API worker threads
connect_args = {"check_same_thread": False} if database_url.startswith("sqlite") else {}

engine = create_engine(database_url, connect_args=connect_args)
sessionLocal = sessionmaker(autoflush=False, autocommit=False, bind=engine)
base = declarative_base()
db_dependency = Annotated[Session, Depends(get_db)]
