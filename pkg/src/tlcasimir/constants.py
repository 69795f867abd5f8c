"""Physical constants used throughout the package (CODATA 2018).

The propagation speed is *not* listed here: it is a property of the line
(user input), not a universal constant.
"""

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23      # J/K (exact)
