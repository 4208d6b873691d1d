"""Campbell-Hausdorff and first-order Milnor invariants of string links.

Modules, bottom up: :mod:`ncalg` (truncated non-commutative series),
:mod:`freelie` (Lyndon-basis free Lie algebra, BCH), :mod:`freegroup`
(free-group words, Magnus and Campbell-Hausdorff expansions),
:mod:`stringlink` (singular braid-like words, Artin action, longitudes),
:mod:`invariants` (derivations, mu-invariants, non-invertibility,
finite-type vanishing checks) and :mod:`cli`.
"""

from .freegroup import GroupWord, ch_expand, magnus_expand, parse_group_word
from .freelie import LieSeries, assoc_to_lie, bch, bracket, lie_to_assoc, lyndon_basis
from .invariants import (ch_first_nonvanishing, chord_weight, derivation,
                         detect_noninvertible, mu_first_nonvanishing,
                         phi_endomorphism, vanishing_check_bracket,
                         vanishing_check_phi)
from .ncalg import NcSeries, nc_exp, nc_inverse, nc_log
from .stringlink import (StringLinkWord, longitudes, parse_word, resolutions,
                         reverse_system)

__version__ = "0.1.0"
