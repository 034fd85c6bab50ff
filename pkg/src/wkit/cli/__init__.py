"""Command-line front end."""

from .main import build_parser, main
