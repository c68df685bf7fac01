#!/usr/bin/env python
"""Runs the triflow commands: gen, analyze, oracle, export and corpus."""
import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "triflow.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError("triflow needs Django; install requirements.txt into the active environment") from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
