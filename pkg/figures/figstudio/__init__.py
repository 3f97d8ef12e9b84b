"""Figure scripts for revival CSV outputs; one module per figure."""

__version__ = "0.1.0"
