import logging
import threading
from fractions import Fraction

from sqlalchemy.orm import Session

from core.exact_algebra import format_rational, to_rational
from core.formal_canard import vdp_coefficients
from model.SeriesCoefficient import SeriesCoefficient

logger = logging.getLogger(__name__)

# one writer at a time on the shared cache
_write_lock = threading.Lock()


def get_coefficients(db: Session, family: str, n_max: int) -> list[Fraction]:
    """Cached a_0.. up to n_max, stopping at the first gap."""
    try:
        logger.debug(f"Fetching cached {family} coefficients up to n={n_max}.")
        rows = (
            db.query(SeriesCoefficient)
            .filter(SeriesCoefficient.family == family, SeriesCoefficient.n <= n_max)
            .order_by(SeriesCoefficient.n.asc())
            .all()
        )
        values = []
        for expected, row in enumerate(rows):
            if row.n != expected:
                break
            values.append(to_rational(row.value))
        logger.info(f"Successfully fetched {len(values)} cached {family} coefficients.")
        return values
    except Exception as e:
        logger.error(f"Error occurred while reading the {family} series cache: {e}")
        raise


def store_coefficients(db: Session, family: str, values: list[Fraction], start: int = 0) -> int:
    """Insert values[i] as coefficient start + i, skipping orders already cached."""
    with _write_lock:
        try:
            logger.debug(f"Attempting to store {len(values)} {family} coefficients from n={start}.")
            present = {
                n
                for (n,) in db.query(SeriesCoefficient.n)
                .filter(SeriesCoefficient.family == family, SeriesCoefficient.n >= start)
                .all()
            }
            added = 0
            for offset, value in enumerate(values):
                n = start + offset
                if n in present:
                    continue
                db.add(SeriesCoefficient(family=family, n=n, value=format_rational(value)))
                added += 1
            db.commit()
            logger.info(f"Successfully stored {added} {family} coefficients.")
            return added
        except Exception as e:
            db.rollback()
            logger.error(f"Error occurred while storing {family} coefficients: {e}")
            raise


def cached_vdp_coefficients(db: Session, N: int) -> tuple[Fraction, ...]:
    """a_0..a_N, computing and storing only what the cache lacks."""
    cached = get_coefficients(db, "vdp", N)
    if len(cached) > N:
        return tuple(cached)
    computed = vdp_coefficients(N)
    store_coefficients(db, "vdp", list(computed[len(cached):]), start=len(cached))
    return computed
