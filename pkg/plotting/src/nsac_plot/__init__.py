"""Batch figure rendering for nsac1d outputs.

Consumes the delimited snapshot CSVs, sweep reports and wave-pattern
text files produced by the `nsac` CLI; renders three-panel state figures
and epsilon-convergence curves deterministically.
"""

__version__ = "0.1.0"
