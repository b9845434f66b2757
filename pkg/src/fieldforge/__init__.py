"""fieldforge: enumerate, construct, identify and catalog number fields over Q."""

__version__ = "0.1.0"
