import logging

from core.config import get_settings


def configure_logging(filename: str | None = None, level: str | None = None) -> None:
    """Configure the root logger once for a CLI run or the API process."""
    settings = get_settings()
    logging.basicConfig(
        filename=filename or settings.log_file,
        level=getattr(logging, (level or settings.log_level).upper(), logging.DEBUG),
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        filemode="a",
    )
