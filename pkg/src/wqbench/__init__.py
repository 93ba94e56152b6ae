"""wqbench: writing-quality benchmark and editing-pipeline toolkit."""

__version__ = "0.1.0"
