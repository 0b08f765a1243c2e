"""TriageTree - interpretable grader/deferral ensembles"""

__version__ = "0.1.0"
