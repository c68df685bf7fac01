"""Plumbing shared by the management commands: input, output, exit codes."""

import json
import sys
from contextlib import contextmanager

from django.core.management.base import CommandError
from rest_framework import serializers

from flows.exceptions import OracleTooLarge, TriflowError

EXIT_INPUT = 1
EXIT_VERIFICATION = 2
EXIT_GUARDRAIL = 3


def read_json(path):
    """Parse JSON from ``path``, ``-`` meaning standard input."""
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}", returncode=EXIT_INPUT)
    except json.JSONDecodeError as exc:
        raise CommandError(f"invalid JSON: {exc}", returncode=EXIT_INPUT)


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _flatten(detail) -> str:
    if isinstance(detail, dict):
        return "; ".join(f"{key}: {_flatten(value)}" for key, value in detail.items())
    if isinstance(detail, list):
        return "; ".join(_flatten(item) for item in detail)
    return str(detail)


@contextmanager
def exit_codes():
    """Map the error hierarchy onto the command exit codes."""
    try:
        yield
    except serializers.ValidationError as exc:
        raise CommandError(f"invalid input: {_flatten(exc.detail)}", returncode=EXIT_INPUT)
    except OracleTooLarge as exc:
        raise CommandError(str(exc), returncode=EXIT_GUARDRAIL)
    except TriflowError as exc:
        raise CommandError(str(exc), returncode=EXIT_INPUT)


def verification_failed(message) -> CommandError:
    return CommandError(message, returncode=EXIT_VERIFICATION)
