"""pancyclic-toolkit: [s,t]-graphs, pancyclic edges and exhaustive theorem checks."""

__version__ = "0.1.0"
