"""Chain calculus: formula algebra, triangulation counting, growth constants.

The package is organized around five building blocks:

* :mod:`chaincalc.extnum` - 64-bit-mantissa nonnegative floats for counts
  whose sizes dwarf IEEE doubles;
* :mod:`chaincalc.formula` - canonical chain formulas, visibility
  triangles, parsing, enumeration, and named chain families;
* :mod:`chaincalc.tripoly` - the quadratic-time triangulation-polynomial
  engine with exact and extended-float coefficient modes;
* :mod:`chaincalc.oracle` - independent cubic, geometric, and brute-force
  validation paths;
* :mod:`chaincalc.asymptotics` - growth constants of poly/twin chain
  families, the entropy maximum, and copy bounds.

``chaincalc.cli`` exposes all of it as the ``chaincalc`` command.
"""

from .extnum import ExtNum, ExtNumError, ExponentRangeError
from .formula import (CapExceededError, Formula, FormulaError, ParseError,
                      VisibilityTriangle, cave, double_chain, double_zigzag,
                      enumerate_chains, flip, formula_from_visibility,
                      formula_to_text, gdc, koch, parse_formula, poly, prim,
                      twin, vee, visibility, vex, wedge, zigzag)
from .tripoly import (ChainCounts, TriPair, TriPolynomial,
                      closed_form_cave_vee_cave, counts, tri_poly,
                      vee_combine, wedge_combine)
from .oracle import (RationalPointSet, count_triangulations_points,
                     oracle_tripoly, realize)
from .asymptotics import (CopyBounds, GrowthReport, PowerSeries, copy_bounds,
                          entropy_max, gdc_upper_bound, lambda_tau,
                          phi_series)

__version__ = "0.1.0"

__all__ = [
    "ExtNum", "ExtNumError", "ExponentRangeError",
    "CapExceededError", "Formula", "FormulaError", "ParseError",
    "VisibilityTriangle", "cave", "double_chain", "double_zigzag",
    "enumerate_chains", "flip", "formula_from_visibility", "formula_to_text",
    "gdc", "koch", "parse_formula", "poly", "prim", "twin", "vee",
    "visibility", "vex", "wedge", "zigzag",
    "ChainCounts", "TriPair", "TriPolynomial", "closed_form_cave_vee_cave",
    "counts", "tri_poly", "vee_combine", "wedge_combine",
    "RationalPointSet", "count_triangulations_points", "oracle_tripoly",
    "realize",
    "CopyBounds", "GrowthReport", "PowerSeries", "copy_bounds", "entropy_max",
    "gdc_upper_bound", "lambda_tau", "phi_series",
    "__version__",
]
