from django.conf import settings

from flows.exceptions import OracleTooLarge


def triflow_setting(name, override=None):
    """Keyword overrides win over ``settings.TRIFLOW``."""
    if override is not None:
        return override
    return settings.TRIFLOW[name]


def guard(what, size, name, override=None):
    limit = triflow_setting(name, override)
    if size > limit:
        raise OracleTooLarge(what, size, limit)
