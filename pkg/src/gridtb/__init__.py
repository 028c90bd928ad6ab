"""Grid diagrams, Legendrian knot invariants, and knot-polynomial bounds.

The package computes, from grid diagrams, planar diagrams or braid
words: tb/sl grid invariants, Kauffman and HOMFLY-PT polynomials,
Khovanov homology, cable doubles, and the upper/lower bounds that
certify arc index and maximal tb/sl for small knots.
"""

from .diagram import BraidWord, Crossing, LinkDiagram, braid_closure, parse_braid, parse_pd
from .errors import GridTbError
from .grid import (GridDiagram, GridInvariants, grid_components, grid_invariants,
                   grid_to_link_diagram, make_grid, random_grid, rotate_mirror)
from .laurent import LaurentPoly2
from .skein import (dubrovnik_transform, homfly, kauffman_F, leading_a_part,
                    naive_homfly, naive_kauffman_F)

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "Crossing", "LinkDiagram", "braid_closure", "parse_braid",
    "parse_pd", "GridTbError", "GridDiagram", "GridInvariants",
    "grid_components", "grid_invariants", "grid_to_link_diagram", "make_grid",
    "random_grid", "rotate_mirror", "LaurentPoly2", "dubrovnik_transform",
    "homfly", "kauffman_F", "leading_a_part", "naive_homfly",
    "naive_kauffman_F", "__version__",
]
