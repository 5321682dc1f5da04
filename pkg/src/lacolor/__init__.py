"""Limit aperiodic colorings of groups built from Z, checked on finite windows."""
from .colorings import Coloring, compile_coloring
from .dsl import format_spec, parse_spec
from .groups import Free, Hnn, Prod, Z

__all__ = ["Coloring", "Free", "Hnn", "Prod", "Z", "compile_coloring", "format_spec", "parse_spec"]
__version__ = "0.1.0"
