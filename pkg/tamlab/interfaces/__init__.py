"""Interfaces Layer: CLI and spec strings.

This layer contains:
- cli.py: Command-line interface
- specs.py: group, element and functor spec parsing
"""

from tamlab.interfaces.cli import main as cli_main

__all__ = ["cli_main"]
