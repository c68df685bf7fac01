"""
Django settings for the triflow project.

The project has no web surface: Django hosts the management commands, the
serializers for the JSON interchange formats, the cache and the Celery
configuration. Everything tunable comes from the environment.
"""

from pathlib import Path

import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


env = environ.Env(
    DEBUG=(bool, False),
    TRIFLOW_ORACLE_EDGE_LIMIT=(int, 26),
    TRIFLOW_ORACLE_VERTEX_LIMIT=(int, 12),
    TRIFLOW_TRITREE_VERTEX_LIMIT=(int, 14),
    TRIFLOW_PROOF_DEPTH=(int, 3),
    TRIFLOW_PARTITION_SEARCH_LIMIT=(int, 20000),
    TRIFLOW_CORPUS_MAX_EXTRA_EDGES=(int, 3),
    TRIFLOW_LOG_LEVEL=(str, "WARNING"),
    CELERY_TASK_ALWAYS_EAGER=(bool, True),
)

SECRET_KEY = env("SECRET_KEY", default="triflow-local-only")

DEBUG = env("DEBUG")

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "rest_framework",
    "flows",
]

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        "flows": {
            "handlers": ["console"],
            "level": env("TRIFLOW_LOG_LEVEL"),
            "propagate": False,
        },
    },
}


# Nothing is persisted; the test runner and contenttypes still expect a database entry.
DATABASES = {"default": env.db("DATABASE_URL", default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}")}

if env("REDIS_URL", default=""):
    CACHES = {
        "default": {
            "BACKEND": "django_redis.cache.RedisCache",
            "LOCATION": env("REDIS_URL"),
            "OPTIONS": {
                "CLIENT_CLASS": "django_redis.client.DefaultClient",
            },
            "KEY_PREFIX": "triflow",
        }
    }
else:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
            "LOCATION": "triflow",
        }
    }


TRIFLOW = {
    "ORACLE_EDGE_LIMIT": env("TRIFLOW_ORACLE_EDGE_LIMIT"),
    "ORACLE_VERTEX_LIMIT": env("TRIFLOW_ORACLE_VERTEX_LIMIT"),
    "TRITREE_VERTEX_LIMIT": env("TRIFLOW_TRITREE_VERTEX_LIMIT"),
    "PROOF_DEPTH": env("TRIFLOW_PROOF_DEPTH"),
    "PARTITION_SEARCH_LIMIT": env("TRIFLOW_PARTITION_SEARCH_LIMIT"),
    "CORPUS_MAX_EXTRA_EDGES": env("TRIFLOW_CORPUS_MAX_EXTRA_EDGES"),
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

CELERY_BROKER_URL = env("REDIS_URL", default="memory://")
CELERY_RESULT_BACKEND = env("REDIS_URL", default="cache+memory://")
CELERY_TASK_ALWAYS_EAGER = env("CELERY_TASK_ALWAYS_EAGER")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
