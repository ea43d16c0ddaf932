"""Workbench for the energy and runtime cost of photonic boson sampling.

The package models a quantum-dot based boson sampler (sources, demultiplexers,
interferometer, cryogenic detectors), the best-known classical simulation cost
for the same task, and the operating points where the photonic machine wins on
energy or on time.  A small exact sampler is included to validate the click
statistics that the hardness metric relies on.
"""

__version__ = "0.1.0"
