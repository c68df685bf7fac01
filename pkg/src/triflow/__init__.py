# Loaded with the settings so corpus tasks register before the first command runs.
from .celery import app as celery_app

__all__ = ("celery_app",)
