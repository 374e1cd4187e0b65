"""gl2frame: canonical frames of GL(2)-structures and contact invariants of ODEs."""

__version__ = "0.1.0"
