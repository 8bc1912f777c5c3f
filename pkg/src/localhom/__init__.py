"""localhom: exact derived-completion computations for graded polynomial rings."""

__version__ = "0.1.0"
