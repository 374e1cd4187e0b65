"""Retry helpers.

Random sample points are redrawn while the right-hand side cannot be
expanded exactly at them (a vanishing denominator, a log of a non-positive
value, an irrational constant term).
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import TypeVar

from tenacity import before_sleep_log, retry, retry_if_exception_type, stop_after_attempt

from src.config import settings
from src.errors import ExpansionDomainError, NotInvertibleError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def retry_on_domain_error(max_attempts: int | None = None) -> Callable:
    """Retry a draw while it raises ``ExpansionDomainError``.

    Args:
        max_attempts: Attempts before the last error is re-raised; defaults
            to ``settings.sample_attempts``

    Returns:
        Decorator adding the retry loop
    """
    attempts = max_attempts or settings.sample_attempts

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        return retry(
            stop=stop_after_attempt(attempts),
            retry=retry_if_exception_type((ExpansionDomainError, NotInvertibleError)),
            before_sleep=before_sleep_log(logger, logging.DEBUG),
            reraise=True,
        )(func)

    return decorator
