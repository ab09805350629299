"""1-motives over the complex numbers.

A 1-motive is a two-term complex [lattice -> semi-abelian variety].  This
package builds them from period data, realizes them (mixed Hodge structure,
finite-level groups, De Rham dimensions), dualizes them, and produces the
four Picard/Albanese 1-motives of a seminormal configuration of curves
together with the Abel-Jacobi map.  The ``onemotives`` console script wraps
it all in a JSON batch interface.
"""

from .config import settings
from .curves import (
    CurveConfiguration,
    abel_jacobi_plus,
    alb_minus,
    alb_plus,
    check_lemma_dual,
    curve_from_config,
    dual_graph,
    pic_minus,
    pic_plus,
    relative_pic0,
)
from .dualize import cartier_dual, double_dual_compare, pairing_mod_m, symmetric_avatar
from .hodge import MixedHodgeStructure
from .intlinalg import IntMatrix
from .motives import (
    OneMotive,
    PolarizedAbelianVariety,
    SemiAbelianVariety,
    from_abelian,
    from_lattice,
    from_torus,
    kummer,
    rebase_u,
    same_presentation,
)
from .realize import (
    etale_tower,
    iso_test,
    motivic,
    realization_sequences_check,
    t_de_rham,
    t_hodge,
    t_mod_m,
)

__version__ = "0.1.0"

__all__ = [
    "CurveConfiguration",
    "IntMatrix",
    "MixedHodgeStructure",
    "OneMotive",
    "PolarizedAbelianVariety",
    "SemiAbelianVariety",
    "abel_jacobi_plus",
    "alb_minus",
    "alb_plus",
    "cartier_dual",
    "check_lemma_dual",
    "curve_from_config",
    "double_dual_compare",
    "dual_graph",
    "etale_tower",
    "from_abelian",
    "from_lattice",
    "from_torus",
    "iso_test",
    "kummer",
    "motivic",
    "pairing_mod_m",
    "pic_minus",
    "pic_plus",
    "realization_sequences_check",
    "rebase_u",
    "relative_pic0",
    "same_presentation",
    "settings",
    "symmetric_avatar",
    "t_de_rham",
    "t_hodge",
    "t_mod_m",
]
